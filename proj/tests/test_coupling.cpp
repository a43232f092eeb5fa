#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support/oracles.hpp"
#include "wreathlab/coupling.hpp"
#include "wreathlab/harness.hpp"

using namespace wreathlab;

namespace {

IndicatorSequence make_seq(std::vector<std::uint8_t> core_bits) {
    IndicatorSequence seq;
    seq.n = static_cast<int>(core_bits.size());
    seq.bits = std::move(core_bits);
    seq.bits.push_back(1);
    return seq;
}

std::map<std::vector<int>, Rat> census_counts_law(const GroupSpec& gamma, int n, int B) {
    std::map<std::vector<int>, Rat> law;
    for (const auto& [type, p] : oracles::type_census(gamma, n)) law[type_to_counts(type, B)] += p;
    return law;
}

}  // namespace

TEST_CASE("indicator sampling") {
    Rng rng(2);
    const auto one = sample_indicators(1, rng);
    CHECK(one.bits == std::vector<std::uint8_t>{1, 1});

    long long ones = 0;
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) ones += sample_indicators(3, rng).at(3);
    const double se = std::sqrt((1.0 / 3) * (2.0 / 3) / draws);
    CHECK(std::abs(static_cast<double>(ones) / draws - 1.0 / 3) < 3 * se);
}

TEST_CASE("spacings") {
    const auto sp = spacings(make_seq({1, 0, 0, 1, 1}));
    CHECK(sp == std::vector<Spacing>{{3, 1}, {1, 4}, {1, 5}});

    const auto all_ones = spacings(make_seq({1, 1, 1, 1}));
    CHECK(all_ones.size() == 4);
    for (const auto& s : all_ones) CHECK(s.length == 1);

    CHECK(spacings(make_seq({1, 0, 0, 0})) == std::vector<Spacing>{{4, 1}});
}

TEST_CASE("spacings reconstruct the sequence") {
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_below(30));
        const auto seq = sample_indicators(n, rng);
        const auto sp = spacings(seq);
        long long total = 0;
        std::vector<std::uint8_t> rebuilt(n + 1, 0);
        for (const auto& s : sp) {
            rebuilt[s.left - 1] = 1;
            total += s.length;
        }
        rebuilt[n] = 1;
        CHECK(total == n);
        CHECK(rebuilt == seq.bits);
    }
}

TEST_CASE("spacing-count law at n = 3 matches fixed points of three letters") {
    // enumerate the four (zeta_2, zeta_3) patterns exactly
    std::map<int, Rat> law;
    const std::pair<std::vector<std::uint8_t>, Rat> patterns[] = {
        {{1, 0, 0}, make_rat(1, 2) * make_rat(2, 3)},
        {{1, 0, 1}, make_rat(1, 2) * make_rat(1, 3)},
        {{1, 1, 0}, make_rat(1, 2) * make_rat(2, 3)},
        {{1, 1, 1}, make_rat(1, 2) * make_rat(1, 3)},
    };
    for (const auto& [bits, p] : patterns) {
        int ones = 0;
        for (const auto& s : spacings(make_seq(bits)))
            if (s.length == 1) ++ones;
        law[ones] += p;
    }
    CHECK(law.at(0) == make_rat(1, 3));
    CHECK(law.at(1) == make_rat(1, 2));
    CHECK(law.at(3) == make_rat(1, 6));
}

TEST_CASE("sampled types conserve weight") {
    Rng rng(6);
    for (const auto& gamma :
         {GroupSpec::cyclic(2), GroupSpec::symmetric(3), GroupSpec::cyclic(4)}) {
        const CycleTypeSampler types(gamma.cycle_index());
        for (int trial = 0; trial < 400; ++trial) {
            const int n = 1 + static_cast<int>(rng.uniform_below(20));
            CHECK(sample_cycle_type(types, n, rng).weight() ==
                  static_cast<long long>(gamma.block_size()) * n);
        }
    }
}

TEST_CASE("trivial blocks give the plain single-group coupling") {
    // exact law for n = 3 equals the census of the three-letter group
    const auto law = exact_coupled_distribution(GroupSpec::symmetric(1), 3, 3);
    CHECK(law.at({3, 0, 0}) == make_rat(1, 6));
    CHECK(law.at({1, 1, 0}) == make_rat(1, 2));
    CHECK(law.at({0, 0, 1}) == make_rat(1, 3));
}

TEST_CASE("exact coupled law matches the enumeration census") {
    struct Case {
        GroupSpec gamma;
        int n;
    };
    for (const auto& c : {Case{GroupSpec::cyclic(2), 2}, Case{GroupSpec::cyclic(2), 3},
                          Case{GroupSpec::symmetric(3), 2}, Case{GroupSpec::cyclic(3), 2}}) {
        const int B = c.gamma.block_size() * c.n;
        const auto coupled = exact_coupled_distribution(c.gamma, c.n, B);
        const auto census = census_counts_law(c.gamma, c.n, B);
        CHECK(coupled == census);
    }
}

TEST_CASE("exact coupled law: the four-point table") {
    const auto law = exact_coupled_distribution(GroupSpec::cyclic(2), 2, 4);
    CHECK(law.at({4, 0, 0, 0}) == make_rat(1, 8));
    CHECK(law.at({2, 1, 0, 0}) == make_rat(1, 4));
    CHECK(law.at({0, 2, 0, 0}) == make_rat(3, 8));
    CHECK(law.at({0, 0, 0, 1}) == make_rat(1, 4));

    const auto point = exact_coupled_distribution(GroupSpec::symmetric(1), 1, 1);
    REQUIRE(point.size() == 1);
    CHECK(point.at({1}) == 1);

    CHECK_THROWS_AS(exact_coupled_distribution(GroupSpec::symmetric(3), 40, 3), CapExceeded);
}

TEST_CASE("truncated counts agree with full types") {
    const CycleTypeSampler types(build_symmetric(3));
    Rng rng_a(12345), rng_b(12345);
    std::vector<int> counts;
    for (int trial = 0; trial < 200; ++trial) {
        const auto type = sample_cycle_type(types, 7, rng_a);
        sample_coupled_counts(types, 7, 4, counts, rng_b);
        for (int b = 1; b <= 4; ++b) CHECK(counts[b - 1] == type.mult_of(b));
    }
}

TEST_CASE("Monte Carlo consistency of the coupled sampler") {
    const GroupSpec gamma = GroupSpec::symmetric(3);
    const int n = 2, B = 6;
    const auto exact = Distribution::from_exact(exact_coupled_distribution(gamma, n, B));
    const CycleTypeSampler types(gamma.cycle_index());
    const long long draws = 1000000;
    auto hist = sample_histogram(
        [&](Rng& rng, std::vector<int>& counts) { sample_coupled_counts(types, n, B, counts, rng); },
        draws, 4242, 0, 2);
    const auto empirical = Distribution::from_histogram(hist, draws);
    CHECK(tv(exact, empirical) <= 0.005);
}

TEST_CASE("urn reference sampler agrees with the indicator coupling") {
    // the sequential urn construction is the ground-truth sampler; compare
    // its type frequencies with the exact law on a small group
    const GroupSpec gamma = GroupSpec::symmetric(3);
    const int n = 2, B = 6, draws = 60000;
    Rng rng(777);
    std::map<std::vector<int>, long long> hist;
    for (int t = 0; t < draws; ++t) {
        const auto sigma = oracles::urn_reference_permutation(gamma, n, rng);
        ++hist[type_to_counts(sigma.cycle_type(), B)];
    }
    const auto exact = Distribution::from_exact(exact_coupled_distribution(gamma, n, B));
    std::vector<long long> counts;
    std::vector<double> probs;
    for (std::size_t i = 0; i < exact.support.size(); ++i) {
        counts.push_back(hist[exact.support[i]]);
        probs.push_back(exact.probs[i]);
    }
    CHECK(chi_square_gof(counts, probs).p_value > 0.001);
}

TEST_CASE("doubly-indexed sampler edge cases") {
    Rng rng(9);
    std::vector<int> counts;

    // k = 1: reduces to the plain coupling for the block permutation
    const auto exact3 = Distribution::from_exact(
        exact_coupled_distribution(GroupSpec::symmetric(1), 3, 3));
    auto hist = sample_histogram(
        [&](Rng& r, std::vector<int>& c) { sample_skn_counts(1, 3, 3, c, r); }, 100000, 5, 0, 1);
    CHECK(tv(exact3, Distribution::from_histogram(hist, 100000)) < 0.01);

    // n = 1: reduces to the plain coupling within one block
    const auto exactk = Distribution::from_exact(
        exact_coupled_distribution(GroupSpec::symmetric(1), 4, 4));
    hist = sample_histogram(
        [&](Rng& r, std::vector<int>& c) { sample_skn_counts(4, 1, 4, c, r); }, 100000, 6, 0, 1);
    CHECK(tv(exactk, Distribution::from_histogram(hist, 100000)) < 0.01);

    // (k, n) = (2, 2): against the full enumeration census
    const auto census = Distribution::from_exact(census_counts_law(GroupSpec::symmetric(2), 2, 4));
    hist = sample_histogram(
        [&](Rng& r, std::vector<int>& c) { sample_skn_counts(2, 2, 4, c, r); }, 200000, 7, 0, 1);
    CHECK(tv(census, Distribution::from_histogram(hist, 200000)) < 0.01);
}

TEST_CASE("product-action coupling") {
    Rng rng(13);
    std::vector<int> counts;

    // k = 1: cycle counts of a single uniform permutation
    const auto exact = Distribution::from_exact(
        census_counts_law(GroupSpec::symmetric(1), 4, 4));
    auto hist = sample_histogram(
        [&](Rng& r, std::vector<int>& c) { sample_product_coupled_counts(1, 4, 4, c, r); },
        150000, 8, 0, 1);
    CHECK(tv(exact, Distribution::from_histogram(hist, 150000)) < 0.01);

    // fixed points multiply: E C_1 = 1 at any sizes
    double sum = 0;
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) {
        sample_product_coupled_counts(30, 40, 1, counts, rng);
        sum += counts[0];
    }
    CHECK(std::abs(sum / draws - 1.0) < 0.04);

    // (k, n) = (2, 3): against the twelve-pair grid census
    const auto grid = census_product_action(2, 3, 6);
    hist = sample_histogram(
        [&](Rng& r, std::vector<int>& c) { sample_product_coupled_counts(2, 3, 6, c, r); },
        200000, 9, 0, 1);
    CHECK(tv(grid, Distribution::from_histogram(hist, 200000)) < 0.01);
}
