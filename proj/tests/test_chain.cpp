#include <catch2/catch_amalgamated.hpp>

#include "support/oracles.hpp"
#include "wreathlab/chain.hpp"
#include "wreathlab/harness.hpp"
#include "wreathlab/io.hpp"

using namespace wreathlab;

namespace {

// The seven-state matrix over 120, rows and columns keyed by partition text.
const std::vector<std::string> kFiveStates = {"1^5", "1^3 2", "1^2 3", "1 4",
                                              "1 2^2", "2 3", "5"};
const long kFiveMatrix[7][7] = {
    {1, 10, 20, 30, 15, 20, 24}, {10, 40, 20, 0, 30, 20, 0}, {20, 20, 40, 0, 0, 40, 0},
    {30, 0, 0, 60, 30, 0, 0},    {15, 30, 0, 30, 45, 0, 0},  {20, 20, 40, 0, 0, 40, 0},
    {24, 0, 0, 0, 0, 0, 96}};

}  // namespace

TEST_CASE("exact lumped matrix at n = 5") {
    const auto m = exact_lumped_matrix(5);
    REQUIRE(m.states.size() == 7);
    for (std::size_t r = 0; r < 7; ++r)
        for (std::size_t c = 0; c < 7; ++c)
            CHECK(m.at(Partition::parse(kFiveStates[r]), Partition::parse(kFiveStates[c])) ==
                  make_rat(kFiveMatrix[r][c], 120));
}

TEST_CASE("lumped matrix structure") {
    const auto one = exact_lumped_matrix(1);
    REQUIRE(one.states.size() == 1);
    CHECK(one.entries[0][0] == 1);

    for (int n = 1; n <= 10; ++n) {
        const auto m = exact_lumped_matrix(n);
        for (std::size_t r = 0; r < m.states.size(); ++r) {
            Rat row_sum = 0;
            for (std::size_t c = 0; c < m.states.size(); ++c) {
                row_sum += m.entries[r][c];
                CHECK(m.entries[r][c] == m.entries[c][r]);
                CHECK(m.entries[r][c] >= 0);
            }
            CHECK(row_sum == 1);
        }
    }
    CHECK_THROWS_AS(exact_lumped_matrix(31), CapExceeded);
}

TEST_CASE("row from the all-singleton state is 1/z") {
    for (int n = 1; n <= 8; ++n) {
        const auto m = exact_lumped_matrix(n);
        const auto from = Partition::from_mults({{1, n}});
        for (const auto& to : m.states) CHECK(m.at(from, to) == Rat(1) / Rat(to.z_weight()));
    }
}

TEST_CASE("row from the single-cycle state is the divisor law") {
    for (int n = 1; n <= 12; ++n) {
        const auto m = exact_lumped_matrix(n);
        const auto from = Partition::from_parts({n});
        for (const auto& to : m.states) {
            const int d = to.largest_part();
            const bool divisor_shape =
                n % d == 0 && to == Partition::from_mults({{d, n / d}});
            CHECK(m.at(from, to) ==
                  (divisor_shape ? make_rat(static_cast<long>(totient(d)), n) : Rat(0)));
        }
    }
    // prime case: only the two extreme states are reachable
    const auto m7 = exact_lumped_matrix(7);
    const auto from = Partition::from_parts({7});
    for (const auto& to : m7.states) {
        if (to == Partition::from_parts({7}) || to == Partition::from_mults({{1, 7}})) continue;
        CHECK(m7.at(from, to) == 0);
    }
}

TEST_CASE("row 2 3 is the product of the part refresh laws") {
    const auto m = exact_lumped_matrix(5);
    const auto from = Partition::parse("2 3");
    const Rat expected[] = {make_rat(1, 6), make_rat(1, 6), make_rat(1, 3), Rat(0),
                            Rat(0),         make_rat(1, 3), Rat(0)};
    for (std::size_t c = 0; c < 7; ++c)
        CHECK(m.at(from, Partition::parse(kFiveStates[c])) == expected[c]);
}

TEST_CASE("rows with distinct parts factor into per-part refreshes") {
    for (int n = 3; n <= 9; ++n) {
        const auto m = exact_lumped_matrix(n);
        for (const auto& from : m.states) {
            bool distinct = true;
            for (auto [part, mult] : from.entries())
                if (mult > 1) distinct = false;
            if (!distinct) continue;
            // convolve the single-part rows K(part, .)
            std::map<Partition, Rat> conv;
            conv.emplace(Partition{}, Rat(1));
            for (auto [part, mult] : from.entries()) {
                const auto part_matrix = exact_lumped_matrix(part);
                const auto part_row_from = Partition::from_parts({part});
                std::map<Partition, Rat> next;
                for (const auto& [acc, p] : conv)
                    for (std::size_t c = 0; c < part_matrix.states.size(); ++c) {
                        const Rat q = part_matrix.at(part_row_from, part_matrix.states[c]);
                        if (q == 0) continue;
                        next[acc.merged_with(part_matrix.states[c])] += p * q;
                    }
                conv = std::move(next);
            }
            for (const auto& to : m.states) {
                auto it = conv.find(to);
                CHECK(m.at(from, to) == (it == conv.end() ? Rat(0) : it->second));
            }
        }
    }
}

TEST_CASE("one-step sampler matches the exact rows") {
    const auto m = exact_lumped_matrix(5);
    LumpedStepper stepper;
    Rng rng(321);
    const int draws = 100000;
    for (const auto& from : m.states) {
        std::map<Partition, long long> hist;
        for (int t = 0; t < draws; ++t) ++hist[stepper.step(from, rng)];
        double tv_dist = 0;
        for (std::size_t c = 0; c < m.states.size(); ++c) {
            const double p = to_double(m.entries[m.index_of(from)][c]);
            const double q = static_cast<double>(hist[m.states[c]]) / draws;
            tv_dist += std::abs(p - q);
        }
        CHECK(tv_dist / 2 <= 0.01);
    }
}

TEST_CASE("single-cycle start reaches only the divisor states") {
    LumpedStepper stepper;
    Rng rng(5150);
    const auto start = Partition::from_parts({5});
    for (int t = 0; t < 1000; ++t) {
        const auto next = stepper.step(start, rng);
        const bool ok = next == Partition::from_parts({5}) || next == Partition::from_mults({{1, 5}});
        CHECK(ok);
    }
}

TEST_CASE("long-run occupancy is uniform") {
    Rng rng(98);
    const auto run = run_lumped(5, 100000, Partition::from_mults({{1, 5}}), rng,
                                /*record_trajectory=*/false, /*thin=*/10);
    std::vector<long long> counts;
    for (const auto& lam : partitions_of(5)) counts.push_back(run.occupancy.count(lam)
                                                                  ? run.occupancy.at(lam)
                                                                  : 0);
    const auto r = chi_square_uniform(counts);
    CHECK(r.p_value > 0.001);
}

TEST_CASE("trajectory recording and validation") {
    Rng rng(3);
    const auto run = run_lumped(4, 50, Partition::from_parts({4}), rng, true);
    CHECK(run.trajectory.size() == 50);
    for (const auto& state : run.trajectory) CHECK(state.weight() == 4);
    CHECK_THROWS_AS(run_lumped(4, 10, Partition::from_parts({3}), rng), std::invalid_argument);
}

TEST_CASE("element chain steps inside the centralizer") {
    ElementChain chain(GroupSpec::symmetric(3).elements());
    const auto s = Permutation::from_one_line({2, 3, 1});
    Rng rng(17);
    std::map<Permutation, long long> hist;
    for (int t = 0; t < 30000; ++t) ++hist[chain.step(s, rng)];
    // centralizer of a 3-cycle in S3 is the cyclic group it generates
    REQUIRE(hist.size() == 3);
    for (const auto& [t, c] : hist) {
        CHECK(compose(t, s) == compose(s, t));
        CHECK(std::abs(static_cast<double>(c) / 30000 - 1.0 / 3) < 0.02);
    }
    CHECK_THROWS_AS(chain.step(Permutation::identity(4), rng), std::invalid_argument);
}

TEST_CASE("element chain from the identity is uniform in one step") {
    ElementChain chain(GroupSpec::symmetric(3).elements());
    Rng rng(29);
    std::map<std::size_t, long long> hist;
    const auto id = chain.index_of(Permutation::identity(3));
    for (int t = 0; t < 60000; ++t) ++hist[chain.step_index(id, rng)];
    std::vector<long long> counts;
    for (std::size_t i = 0; i < 6; ++i) counts.push_back(hist[i]);
    CHECK(chi_square_uniform(counts).p_value > 0.001);
}

TEST_CASE("element chain on an abelian group is uniform from any state") {
    ElementChain chain(GroupSpec::cyclic(6).elements());
    Rng rng(31);
    std::map<std::size_t, long long> hist;
    std::size_t state = 2;
    for (int t = 0; t < 60000; ++t) {
        state = chain.step_index(state, rng);
        if (t % 2 == 0) ++hist[state];
    }
    std::vector<long long> counts;
    for (std::size_t i = 0; i < 6; ++i) counts.push_back(hist[i]);
    CHECK(chi_square_uniform(counts).p_value > 0.001);
}

TEST_CASE("element chain stationary law is inverse class size") {
    // aggregated by class the stationary mass is uniform over classes
    ElementChain chain(GroupSpec::symmetric(4).elements());
    std::map<Partition, int> class_id;
    for (const auto& lam : partitions_of(4))
        class_id.emplace(lam, static_cast<int>(class_id.size()));
    std::vector<int> class_of;
    for (const auto& p : chain.elements()) class_of.push_back(class_id.at(p.cycle_type()));

    Rng rng(55);
    std::size_t state = 0;
    std::vector<long long> counts(class_id.size(), 0);
    const long long steps = 200000;
    for (long long t = 0; t < steps; ++t) {
        state = chain.step_index(state, rng);
        if (t % 10 == 0) ++counts[class_of[state]];
    }
    CHECK(chi_square_uniform(counts).p_value > 0.001);
}

TEST_CASE("lumped matrix csv") {
    const auto csv = lumped_matrix_to_csv(exact_lumped_matrix(3));
    CHECK(csv.find("state,1^3,1 2,3") == 0);
    CHECK(csv.find("1/6") != std::string::npos);
}
