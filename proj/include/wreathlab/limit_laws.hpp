#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "wreathlab/cycle_index.hpp"
#include "wreathlab/numtheory.hpp"
#include "wreathlab/partition.hpp"
#include "wreathlab/rng.hpp"

namespace wreathlab {

/// One independent Poisson atom of a compound-Poisson vector. The atom is
/// keyed by (spacing length l, block cycle type lambda); it feeds coordinate
/// i = j*l with coefficient a_j(lambda) for every part size j of lambda.
/// Shared atoms across coordinates are exactly what makes the limit vectors
/// dependent.
template <typename RateT>
struct CompoundAtom {
    int spacing = 0;
    Partition block_type;
    RateT rate{};
    std::vector<std::pair<int, long>> coeffs;  // (output coordinate, coefficient), ascending

    std::pair<int, Partition> key() const { return {spacing, block_type}; }

    long coeff_at(int i) const {
        for (auto [idx, c] : coeffs)
            if (idx == i) return c;
        return 0;
    }
};

/// A dependent compound-Poisson vector (A_1,...,A_B): independent Poisson
/// atoms, A_i = sum of coeff * atom over atoms feeding i. Rates are exact
/// rationals wherever the defining formula is rational; sampling converts to
/// floating point at the last moment.
template <typename RateT>
struct CompoundSpec {
    int truncation = 0;  // B
    std::vector<CompoundAtom<RateT>> atoms;

    void sort_atoms() {
        std::sort(atoms.begin(), atoms.end(),
                  [](const CompoundAtom<RateT>& a, const CompoundAtom<RateT>& b) {
                      return a.key() < b.key();
                  });
    }

    /// E A_i, by atom linearity.
    RateT mean(int i) const {
        RateT m{};
        for (const auto& atom : atoms) m += atom.rate * RateT(atom.coeff_at(i));
        return m;
    }

    /// Cov(A_i, A_j) = sum over shared atoms of rate * c_i * c_j.
    RateT covariance(int i, int j) const {
        RateT c{};
        for (const auto& atom : atoms) c += atom.rate * RateT(atom.coeff_at(i) * atom.coeff_at(j));
        return c;
    }

    /// Atom keys feeding both coordinates (the dependence witnesses).
    std::vector<std::pair<int, Partition>> shared_atoms(int i, int j) const {
        std::vector<std::pair<int, Partition>> out;
        for (const auto& atom : atoms)
            if (atom.coeff_at(i) > 0 && atom.coeff_at(j) > 0) out.push_back(atom.key());
        return out;
    }
};

using RationalCompoundSpec = CompoundSpec<Rat>;
using RealCompoundSpec = CompoundSpec<double>;

/// The exact law of the cycle counts of Gamma^n x| S_n under geometric(1-t)
/// randomization of n (t = 1: the n -> infinity limit law). One atom per
/// (spacing length l <= B, block type lambda with positive probability),
/// with rate t^l P_Gamma(lambda) / l. Atoms feeding no coordinate in [1,B]
/// are dropped.
inline RationalCompoundSpec build_spec(const CycleIndexPoly& zGamma, const Rat& t, int B) {
    if (B < 1) throw std::invalid_argument("build_spec: B < 1");
    if (t <= 0 || t > 1) throw std::invalid_argument("build_spec: t must lie in (0,1]");
    RationalCompoundSpec spec;
    spec.truncation = B;
    Rat t_power = 1;
    for (int l = 1; l <= B; ++l) {
        t_power *= t;
        for (const auto& [lambda, p] : zGamma.terms()) {
            CompoundAtom<Rat> atom;
            atom.spacing = l;
            atom.block_type = lambda;
            atom.rate = t_power * p / l;
            for (auto [j, a] : lambda.entries())
                if (static_cast<long long>(j) * l <= B) atom.coeffs.push_back({j * l, a});
            if (!atom.coeffs.empty()) spec.atoms.push_back(std::move(atom));
        }
    }
    spec.sort_atoms();
    return spec;
}

/// The cyclic-block limit law assembled from its divisor form:
/// A_i = sum_{l | gcd(i,k)} (k/l) Y_{i,l} with Y_{i,l} ~ Poi(l phi(l) / (k i)).
/// Distributionally equal to build_spec(Z_{C_k}, 1, B); the equality is a
/// regrouping and is covered by tests, not assumed here.
inline RationalCompoundSpec cyclic_spec(int k, int B) {
    if (k < 1 || B < 1) throw std::invalid_argument("cyclic_spec: k, B >= 1 required");
    RationalCompoundSpec spec;
    spec.truncation = B;
    for (int i = 1; i <= B; ++i) {
        const int g = static_cast<int>(gcd_u(i, k));
        for (auto ld : divisors(static_cast<std::uint64_t>(g))) {
            const int l = static_cast<int>(ld);
            CompoundAtom<Rat> atom;
            atom.spacing = i / l;
            atom.block_type = Partition::from_mults({{l, k / l}});
            atom.rate = make_rat(Int(l) * static_cast<long>(totient(l)), Int(k) * i);
            atom.coeffs = {{i, k / l}};
            spec.atoms.push_back(std::move(atom));
        }
    }
    spec.sort_atoms();
    return spec;
}

/// The six-residue table for blocks of size 3, taken literally:
///   i = 1 (mod 6): A_i = 3W_i + Z_i            i = 2 (mod 6): ... + Z_{i/2}
///   i = 3 (mod 6): ... + Y_i                   i = 0 (mod 6): ... + Z_{i/2} + Y_i
/// with W_i ~ Poi(1/6i), Z_i ~ Poi(1/2i), Y_i ~ Poi(1/i), all independent.
/// The W/Z/Y names are regrouped onto (spacing, block type) atom keys.
inline RationalCompoundSpec s3_spec(int B) {
    if (B < 1) throw std::invalid_argument("s3_spec: B < 1");
    const Partition fixed3 = Partition::from_parts({1, 1, 1});
    const Partition swap1 = Partition::from_parts({2, 1});
    const Partition three = Partition::from_parts({3});

    std::map<std::pair<int, Partition>, CompoundAtom<Rat>> atoms;
    auto touch = [&](int spacing, const Partition& type, const Rat& rate, int coord, long coeff) {
        auto key = std::make_pair(spacing, type);
        auto it = atoms.find(key);
        if (it == atoms.end()) {
            CompoundAtom<Rat> atom;
            atom.spacing = spacing;
            atom.block_type = type;
            atom.rate = rate;
            it = atoms.emplace(key, std::move(atom)).first;
        }
        it->second.coeffs.push_back({coord, coeff});
    };

    for (int i = 1; i <= B; ++i) {
        touch(i, fixed3, Rat(1, 6 * i), i, 3);  // 3 W_i
        touch(i, swap1, Rat(1, 2 * i), i, 1);   // Z_i
        if (i % 2 == 0) touch(i / 2, swap1, Rat(1, i), i, 1);   // Z_{i/2}
        if (i % 3 == 0) touch(i / 3, three, Rat(1, i), i, 1);   // Y_i
    }
    RationalCompoundSpec spec;
    spec.truncation = B;
    for (auto& [key, atom] : atoms) {
        std::sort(atom.coeffs.begin(), atom.coeffs.end());
        spec.atoms.push_back(std::move(atom));
    }
    return spec;
}

/// The joint limit when both the block size and the number of blocks grow:
/// A_i = sum_{c l = i} sum_{j >= 1} j X_{l,c,j}, with X_{l,c,j} Poisson of
/// rate p_j(1/c)/l, p the Poisson PMF. The inner j-sum is truncated once
/// j * rate < eps; truncation only drops atoms and biases means downward by
/// at most the dropped mass.
inline RealCompoundSpec skn_limit_spec(int B, double eps = 1e-12) {
    if (B < 1) throw std::invalid_argument("skn_limit_spec: B < 1");
    if (eps <= 0) throw std::invalid_argument("skn_limit_spec: eps <= 0");
    RealCompoundSpec spec;
    spec.truncation = B;
    for (int l = 1; l <= B; ++l) {
        for (int c = 1; c * l <= B; ++c) {
            const int i = c * l;
            double pmf = std::exp(-1.0 / c);  // j = 0
            for (int j = 1;; ++j) {
                pmf *= (1.0 / c) / j;
                const double rate = pmf / l;
                if (j * rate < eps) break;
                CompoundAtom<double> atom;
                atom.spacing = l;
                atom.block_type = Partition::from_mults({{c, j}});
                atom.rate = rate;
                atom.coeffs = {{i, j}};
                spec.atoms.push_back(std::move(atom));
            }
        }
    }
    spec.sort_atoms();
    return spec;
}

namespace pmf_detail {

inline double poisson_pmf(double lambda, long m) {
    if (lambda == 0) return m == 0 ? 1.0 : 0.0;
    return std::exp(-lambda + m * std::log(lambda) - std::lgamma(static_cast<double>(m) + 1));
}

template <typename RateT>
double rate_as_double(const RateT& r) {
    if constexpr (std::is_same_v<RateT, Rat>)
        return to_double(r);
    else
        return r;
}

}  // namespace pmf_detail

/// One draw of (A_1,...,A_B): an independent Poisson per atom.
template <typename RateT>
std::vector<long> sample(const CompoundSpec<RateT>& spec, Rng& rng) {
    std::vector<long> counts(spec.truncation, 0);
    for (const auto& atom : spec.atoms) {
        const long n = rng.poisson(pmf_detail::rate_as_double(atom.rate));
        if (n == 0) continue;
        for (auto [i, c] : atom.coeffs) counts[i - 1] += c * n;
    }
    return counts;
}

/// PMF of A_i on {0..support_max}, by convolving the scaled-Poisson atoms
/// feeding coordinate i. Exact up to floating summation error.
template <typename RateT>
std::vector<double> marginal_pmf(const CompoundSpec<RateT>& spec, int i, int support_max) {
    if (support_max < 0) throw std::invalid_argument("marginal_pmf: negative support");
    std::vector<double> pmf(support_max + 1, 0.0);
    pmf[0] = 1.0;
    for (const auto& atom : spec.atoms) {
        const long c = atom.coeff_at(i);
        if (c == 0) continue;
        const double lambda = pmf_detail::rate_as_double(atom.rate);
        std::vector<double> next(support_max + 1, 0.0);
        for (long m = 0; c * m <= support_max; ++m) {
            const double pm = pmf_detail::poisson_pmf(lambda, m);
            for (int x = static_cast<int>(c * m); x <= support_max; ++x)
                next[x] += pm * pmf[x - c * m];
        }
        pmf = std::move(next);
    }
    return pmf;
}

/// Joint PMF of (A_i, A_j) on {0..s}^2. Atoms feeding both coordinates move
/// diagonally, which is exactly the dependence structure.
template <typename RateT>
std::vector<std::vector<double>> pair_joint_pmf(const CompoundSpec<RateT>& spec, int i, int j,
                                                int support_max) {
    std::vector<std::vector<double>> pmf(support_max + 1,
                                         std::vector<double>(support_max + 1, 0.0));
    pmf[0][0] = 1.0;
    for (const auto& atom : spec.atoms) {
        const long ci = atom.coeff_at(i), cj = atom.coeff_at(j);
        if (ci == 0 && cj == 0) continue;
        const double lambda = pmf_detail::rate_as_double(atom.rate);
        std::vector<std::vector<double>> next(support_max + 1,
                                              std::vector<double>(support_max + 1, 0.0));
        for (long m = 0; ci * m <= support_max && cj * m <= support_max; ++m) {
            const double pm = pmf_detail::poisson_pmf(lambda, m);
            for (int x = static_cast<int>(ci * m); x <= support_max; ++x)
                for (int y = static_cast<int>(cj * m); y <= support_max; ++y)
                    next[x][y] += pm * pmf[x - ci * m][y - cj * m];
        }
        pmf = std::move(next);
    }
    return pmf;
}

/// Full joint PMF of (A_1..A_B) on {0..s}^B. Exponential in B; only small
/// windows are supported.
template <typename RateT>
std::map<std::vector<int>, double> joint_pmf_table(const CompoundSpec<RateT>& spec,
                                                   int support_max) {
    const int B = spec.truncation;
    if (B > 4 || support_max > 15)
        throw std::invalid_argument("joint_pmf_table: limited to B <= 4, support <= 15");
    std::map<std::vector<int>, double> pmf;
    pmf.emplace(std::vector<int>(B, 0), 1.0);
    for (const auto& atom : spec.atoms) {
        const double lambda = pmf_detail::rate_as_double(atom.rate);
        std::map<std::vector<int>, double> next;
        for (long m = 0;; ++m) {
            const double pm = pmf_detail::poisson_pmf(lambda, m);
            bool in_window = m == 0;
            for (const auto& [vec, p] : pmf) {
                std::vector<int> shifted(vec);
                bool ok = true;
                for (auto [i, c] : atom.coeffs) {
                    shifted[i - 1] += static_cast<int>(c * m);
                    if (shifted[i - 1] > support_max) ok = false;
                }
                if (!ok) continue;
                in_window = true;
                next[shifted] += pm * p;
            }
            if (!in_window) break;
        }
        pmf = std::move(next);
    }
    return pmf;
}

/// Truncated limit law for the product action of S_k x S_n on the grid:
/// A_l = sum_{a | l} X_a sum_{i : lcm(i,a) = l} gcd(i,a) Y_i, with all X_a,
/// Y_i independent Poisson(1/a), Poisson(1/i). A quadratic in Poissons, not
/// compound Poisson.
struct ProductActionSpec {
    int truncation = 0;
};

inline std::vector<long> sample_product_action(const ProductActionSpec& spec, Rng& rng) {
    const int B = spec.truncation;
    std::vector<long> X(B + 1, 0), Y(B + 1, 0);
    for (int a = 1; a <= B; ++a) X[a] = rng.poisson(1.0 / a);
    for (int i = 1; i <= B; ++i) Y[i] = rng.poisson(1.0 / i);
    std::vector<long> counts(B, 0);
    for (int a = 1; a <= B; ++a) {
        if (!X[a]) continue;
        for (int i = 1; i <= B; ++i) {
            if (!Y[i]) continue;
            const long long l = static_cast<long long>(lcm_u(a, i));
            if (l <= B) counts[l - 1] += static_cast<long>(gcd_u(a, i)) * X[a] * Y[i];
        }
    }
    return counts;
}

/// Exact-to-tolerance joint PMF of (A_1..A_B) for the product action, by
/// exhausting Poisson values up to a tail cutoff.
inline std::map<std::vector<int>, double> product_action_joint_pmf(int B, int value_cap = 30) {
    std::map<std::vector<int>, double> law;
    // Nested enumeration over all X_a, Y_i <= value_cap; vals holds
    // X_1..X_B then Y_1..Y_B.
    std::vector<int> vals(2 * B, 0);
    auto pmf_at = [&](int idx, long v) {
        const double rate = idx < B ? 1.0 / (idx + 1) : 1.0 / (idx - B + 1);
        return pmf_detail::poisson_pmf(rate, v);
    };
    auto rec = [&](auto&& self, int idx, double prob) -> void {
        if (idx == 2 * B) {
            std::vector<int> counts(B, 0);
            for (int a = 1; a <= B; ++a)
                for (int i = 1; i <= B; ++i) {
                    const long long l = static_cast<long long>(lcm_u(a, i));
                    if (l <= B)
                        counts[l - 1] += static_cast<int>(gcd_u(a, i)) * vals[a - 1] * vals[B + i - 1];
                }
            law[counts] += prob;
            return;
        }
        for (int v = 0; v <= value_cap; ++v) {
            const double p = pmf_at(idx, v);
            if (p * prob < 1e-18 && v > 0) break;
            vals[idx] = v;
            self(self, idx + 1, prob * p);
        }
    };
    rec(rec, 0, 1.0);
    return law;
}

}  // namespace wreathlab
