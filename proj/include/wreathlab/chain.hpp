#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wreathlab/coupling.hpp"
#include "wreathlab/cycle_index.hpp"
#include "wreathlab/partition.hpp"
#include "wreathlab/permutation.hpp"
#include "wreathlab/rng.hpp"

namespace wreathlab {

/// Exact transition matrix of the commuting-graph walk lumped to conjugacy
/// classes of S_n, i.e. partitions of n. Symmetric, doubly stochastic, so
/// the stationary law is uniform over the p(n) partitions.
struct LumpedMatrix {
    int n = 0;
    std::vector<Partition> states;          // canonical order
    std::vector<std::vector<Rat>> entries;  // row-stochastic, symmetric

    const Rat& at(const Partition& from, const Partition& to) const {
        return entries[index_of(from)][index_of(to)];
    }

    std::size_t index_of(const Partition& state) const {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i] == state) return i;
        throw std::invalid_argument("lumped matrix: unknown state " + state.to_string());
    }
};

/// Row construction: from state lambda, each part size i with multiplicity a
/// refreshes independently to the cycle type of a uniform element of the
/// centralizer factor C_i^a x| S_a acting on i*a points, whose exact type
/// distribution is the composed cycle index. The row is the convolution of
/// those per-part-size laws.
inline LumpedMatrix exact_lumped_matrix(int n, int max_n = 30) {
    if (n < 1) throw std::invalid_argument("exact_lumped_matrix: n < 1");
    if (n > max_n) throw CapExceeded("exact_lumped_matrix: n exceeds cap");
    LumpedMatrix m;
    m.n = n;
    m.states = partitions_of(n);
    std::map<Partition, std::size_t> index;
    for (std::size_t i = 0; i < m.states.size(); ++i) index.emplace(m.states[i], i);

    // Cache the type law of C_i^a x| S_a per (i, a).
    std::map<std::pair<int, int>, CycleIndexPoly::Terms> factor_law;
    auto law_of = [&](int i, int a) -> const CycleIndexPoly::Terms& {
        auto key = std::make_pair(i, a);
        auto it = factor_law.find(key);
        if (it == factor_law.end())
            it = factor_law.emplace(key, wreath_compose(build_symmetric(a), build_cyclic(i)).terms())
                     .first;
        return it->second;
    };

    m.entries.assign(m.states.size(), std::vector<Rat>(m.states.size(), Rat(0)));
    for (std::size_t r = 0; r < m.states.size(); ++r) {
        std::map<Partition, Rat> row;
        row.emplace(Partition{}, Rat(1));
        for (auto [i, a] : m.states[r].entries()) {
            std::map<Partition, Rat> next;
            for (const auto& [acc, p] : row)
                for (const auto& [type, q] : law_of(i, a)) next[acc.merged_with(type)] += p * q;
            row = std::move(next);
        }
        for (const auto& [state, p] : row) m.entries[r][index.at(state)] = p;
    }
    return m;
}

/// Single-step sampler for the lumped chain. Routes through the indicator
/// coupling, so a step costs O(n) samples and never touches group elements;
/// per-part-size type samplers are cached across steps.
class LumpedStepper {
  public:
    Partition step(const Partition& state, Rng& rng) {
        std::map<int, int> acc;
        for (auto [i, a] : state.entries()) {
            const Partition refreshed = sample_cycle_type(sampler_for(i), a, rng);
            for (auto [part, mult] : refreshed.entries()) acc[part] += mult;
        }
        std::vector<Partition::Entry> entries(acc.begin(), acc.end());
        return Partition::from_mults(std::move(entries));
    }

  private:
    const CycleTypeSampler& sampler_for(int i) {
        auto it = samplers_.find(i);
        if (it == samplers_.end()) it = samplers_.emplace(i, CycleTypeSampler(build_cyclic(i))).first;
        return it->second;
    }

    std::map<int, CycleTypeSampler> samplers_;
};

struct LumpedRun {
    std::vector<Partition> trajectory;       // filled only when recorded
    std::map<Partition, long long> occupancy;
    Partition final_state;
};

inline LumpedRun run_lumped(int n, long long steps, const Partition& start, Rng& rng,
                            bool record_trajectory = false, long long thin = 1) {
    if (steps < 1) throw std::invalid_argument("run_lumped: steps < 1");
    if (thin < 1) throw std::invalid_argument("run_lumped: thin < 1");
    if (start.weight() != n) throw std::invalid_argument("run_lumped: start is not a partition of n");
    LumpedStepper stepper;
    LumpedRun run;
    Partition state = start;
    for (long long t = 0; t < steps; ++t) {
        state = stepper.step(state, rng);
        if (t % thin == 0) {
            ++run.occupancy[state];
            if (record_trajectory) run.trajectory.push_back(state);
        }
    }
    run.final_state = state;
    return run;
}

/// Element-level commuting walk on an explicitly enumerated group: from s,
/// move to a uniform element of the centralizer of s. Centralizer member
/// lists are cached per state.
class ElementChain {
  public:
    explicit ElementChain(std::vector<Permutation> elements)
        : elements_(std::move(elements)), centralizer_(elements_.size()) {
        if (elements_.empty()) throw std::invalid_argument("element chain: empty group");
        for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
    }

    const std::vector<Permutation>& elements() const { return elements_; }

    std::size_t index_of(const Permutation& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) throw std::invalid_argument("element chain: state not in group");
        return it->second;
    }

    std::size_t step_index(std::size_t i, Rng& rng) {
        const auto& cent = centralizer_of(i);
        return cent[rng.uniform_below(cent.size())];
    }

    Permutation step(const Permutation& s, Rng& rng) {
        return elements_[step_index(index_of(s), rng)];
    }

  private:
    const std::vector<std::size_t>& centralizer_of(std::size_t i) {
        auto& cent = centralizer_[i];
        if (cent.empty()) {
            for (std::size_t j = 0; j < elements_.size(); ++j)
                if (compose(elements_[i], elements_[j]) == compose(elements_[j], elements_[i]))
                    cent.push_back(j);
        }
        return cent;
    }

    std::vector<Permutation> elements_;
    std::map<Permutation, std::size_t> index_;
    std::vector<std::vector<std::size_t>> centralizer_;
};

}  // namespace wreathlab
