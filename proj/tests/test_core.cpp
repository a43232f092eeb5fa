#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "support/oracles.hpp"
#include "wreathlab/numtheory.hpp"
#include "wreathlab/partition.hpp"
#include "wreathlab/permutation.hpp"
#include "wreathlab/rng.hpp"

using namespace wreathlab;

TEST_CASE("cycle_type") {
    CHECK(Permutation::from_one_line({6, 5, 2, 1, 3, 4}).cycle_type() ==
          Partition::from_mults({{3, 2}}));
    CHECK(Permutation::identity(5).cycle_type() == Partition::from_mults({{1, 5}}));
    CHECK(Permutation::from_one_line({2, 1, 3}).cycle_type() ==
          Partition::from_parts({1, 2}));
}

TEST_CASE("cycle type weight equals degree") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + static_cast<int>(rng.uniform_below(12));
        const auto p = GroupSpec::symmetric(m).sample(rng);
        CHECK(p.cycle_type().weight() == m);
    }
}

TEST_CASE("compose") {
    Rng rng(7);
    const auto p = GroupSpec::symmetric(6).sample(rng);
    CHECK(compose(p, Permutation::identity(6)) == p);
    CHECK(compose(p, p.inverse()).is_identity());
    const auto swap2 = Permutation::from_one_line({2, 1});
    CHECK(compose(swap2, swap2).is_identity());
    CHECK_THROWS_AS(compose(p, swap2), std::invalid_argument);
}

TEST_CASE("cycle type is conjugation invariant") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = GroupSpec::symmetric(7).sample(rng);
        const auto q = GroupSpec::symmetric(7).sample(rng);
        CHECK(compose(q, compose(p, q.inverse())).cycle_type() == p.cycle_type());
    }
}

TEST_CASE("permutation validation and cycle notation") {
    CHECK_THROWS_AS(Permutation::from_one_line({1, 1, 3}), std::invalid_argument);
    const auto p = Permutation::parse_cycles("(1 6 4)(2 5 3)", 6);
    CHECK(p.one_line() == std::vector<int>{6, 5, 2, 1, 3, 4});
    CHECK(Permutation::parse_cycles("()", 4).is_identity());
    CHECK(Permutation::parse_cycles(p.to_cycles(), 6) == p);
    CHECK_THROWS_AS(Permutation::parse_cycles("(1 7)", 6), std::invalid_argument);
    CHECK_THROWS_AS(Permutation::parse_cycles("(1 2)(2 3)", 3), std::invalid_argument);
}

TEST_CASE("z_weight") {
    CHECK(Partition::from_mults({{1, 5}}).z_weight() == 120);

    // Oracle: class sizes in S5 by enumeration.
    std::map<Partition, long> class_size;
    for (const auto& p : GroupSpec::symmetric(5).elements()) ++class_size[p.cycle_type()];
    const auto type_213 = Partition::from_mults({{1, 3}, {2, 1}});
    CHECK(type_213.z_weight() == 12);
    CHECK(class_size[type_213] == 120 / 12);  // = 10
    const auto type_5 = Partition::from_parts({5});
    CHECK(type_5.z_weight() == 5);
    CHECK(class_size[type_5] == 24);
}

TEST_CASE("class sizes sum to the group order") {
    for (int n = 1; n <= 8; ++n) {
        Rat total = 0;
        const Rat nfact(factorial(n));
        for (const auto& lam : partitions_of(n)) total += nfact / Rat(lam.z_weight());
        CHECK(total == nfact);
    }
}

TEST_CASE("partitions_of") {
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_of(0)[0].empty());
    CHECK(partitions_of(4).size() == 5);
    CHECK(partitions_of(7).size() == 15);

    const auto counts = oracles::partition_counts(25);
    for (int n = 0; n <= 25; ++n) {
        const auto parts = partitions_of(n);
        CHECK(static_cast<long long>(parts.size()) == counts[n]);
        std::set<Partition> distinct(parts.begin(), parts.end());
        CHECK(distinct.size() == parts.size());
        for (const auto& p : parts) CHECK(p.weight() == n);
        CHECK(std::is_sorted(parts.begin(), parts.end()));
    }
}

TEST_CASE("canonical order is ascending part-list lex") {
    auto as_list = [](const Partition& p) {
        std::vector<int> out;
        for (auto [part, mult] : p.entries())
            for (int i = 0; i < mult; ++i) out.push_back(part);
        return out;
    };
    for (int n = 1; n <= 9; ++n) {
        const auto parts = partitions_of(n);
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t j = 0; j < parts.size(); ++j)
                CHECK((parts[i] < parts[j]) == (as_list(parts[i]) < as_list(parts[j])));
    }
}

TEST_CASE("partition text form") {
    const auto p = Partition::from_mults({{1, 3}, {2, 1}});
    CHECK(p.to_string() == "1^3 2");
    CHECK(Partition::parse("1^3 2") == p);
    CHECK(Partition::parse("  2^2   5 ") == Partition::from_parts({2, 2, 5}));
    CHECK(Partition::parse("").empty());
    CHECK_THROWS_AS(Partition::parse("0^2"), std::invalid_argument);
    CHECK_THROWS_AS(Partition::parse("x"), std::invalid_argument);
    for (int n = 0; n <= 10; ++n)
        for (const auto& lam : partitions_of(n)) CHECK(Partition::parse(lam.to_string()) == lam);
}

TEST_CASE("totient and divisors") {
    CHECK(totient(1) == 1);
    CHECK(totient(12) == 4);
    CHECK(divisors(6) == std::vector<std::uint64_t>{1, 2, 3, 6});
    // direct gcd-count oracle
    for (std::uint64_t n = 1; n <= 200; ++n) {
        std::uint64_t count = 0;
        for (std::uint64_t j = 1; j <= n; ++j)
            if (std::gcd(j, n) == 1) ++count;
        CHECK(totient(n) == count);
    }
    for (std::uint64_t n = 1; n <= 1000; ++n) {
        std::uint64_t sum = 0;
        for (auto d : divisors(n)) sum += totient(d);
        CHECK(sum == n);
    }
}

TEST_CASE("exact rationals canonicalize") {
    CHECK(make_rat(2, 4) == make_rat(1, 2));
    CHECK(rat_to_string(make_rat(40, 120)) == "1/3");
    CHECK(rat_to_string(Rat(3)) == "3");
    CHECK(rat_from_string("40/120") == make_rat(1, 3));
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(1) == 1);
    CHECK(harmonic(4) == make_rat(25, 12));
    CHECK(harmonic2(2) == make_rat(5, 4));
}
