#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "wreathlab/cycle_index.hpp"
#include "wreathlab/numtheory.hpp"
#include "wreathlab/permutation.hpp"
#include "wreathlab/rng.hpp"

namespace wreathlab {

inline constexpr double kEulerGamma = 0.5772156649015329;

/// d(sigma) = #{i : sigma(i) > sigma(i+1)}.
inline long descents(const Permutation& p) {
    long d = 0;
    for (int i = 1; i < p.degree(); ++i)
        if (p(i) > p(i + 1)) ++d;
    return d;
}

/// I(sigma) = #{i < j : sigma(i) > sigma(j)}, counted with a Fenwick tree in
/// O(m log m) so large induced permutations stay cheap.
inline long long inversions(const Permutation& p) {
    const int m = p.degree();
    std::vector<int> tree(m + 1, 0);
    auto add = [&](int i) {
        for (; i <= m; i += i & -i) ++tree[i];
    };
    auto prefix = [&](int i) {
        long long s = 0;
        for (; i > 0; i -= i & -i) s += tree[i];
        return s;
    };
    long long inv = 0;
    for (int i = m; i >= 1; --i) {
        inv += prefix(p(i) - 1);  // earlier-scanned (i.e. right of i) smaller values
        add(p(i));
    }
    return inv;
}

inline long cycle_count(const Permutation& p) {
    return static_cast<long>(p.cycle_type().part_count());
}

struct MomentPair {
    Rat mean;
    Rat variance;

    Rat second_moment() const { return variance + mean * mean; }
};

/// Moments of the number of cycles of a uniform rotation in C_k, from the
/// divisor sums E(C) = sum_{d|k} phi(d)/d and E(C^2) = k sum_{d|k} phi(d)/d^2.
inline MomentPair cycle_count_moments_cyclic(int k) {
    if (k < 1) throw std::invalid_argument("cycle_count_moments_cyclic: k < 1");
    Rat mean = 0, second = 0;
    for (auto d : divisors(static_cast<std::uint64_t>(k))) {
        const Rat phi(static_cast<unsigned long>(totient(d)));
        mean += phi / Rat(static_cast<unsigned long>(d));
        second += phi / Rat(Int(static_cast<unsigned long>(d)) * static_cast<unsigned long>(d));
    }
    second *= k;
    return {mean, second - mean * mean};
}

/// Closed forms printed for prime powers: the mean 1 + a(1 - 1/p) agrees
/// with the divisor sum, the second moment p^a [1 + (1/p)(1 - 1/p^{a-1})]
/// does not (off by one in the exponent; the divisor sum gives 1/p^a and
/// matches enumeration). Both are exposed so the discrepancy can be
/// detected and reported rather than silently patched.
inline Rat cyclic_mean_closed_form(int p, int a) {
    return 1 + Rat(a) * (1 - Rat(1, p));
}

inline Rat cyclic_second_moment_closed_form(int p, int a) {
    Int pa, pa1;
    mpz_ui_pow_ui(pa.get_mpz_t(), p, a);
    mpz_ui_pow_ui(pa1.get_mpz_t(), p, a - 1);
    return Rat(pa) * (1 + Rat(1, p) * (1 - Rat(1) / Rat(pa1)));
}

struct CyclicMomentDiscrepancy {
    int p = 0;
    int a = 0;
    Rat closed_form;
    Rat divisor_sum;
};

/// Prime powers p^a <= max_k where the printed second-moment closed form
/// disagrees with the divisor sum.
inline std::vector<CyclicMomentDiscrepancy> cyclic_second_moment_discrepancies(int max_k) {
    std::vector<CyclicMomentDiscrepancy> out;
    for (int p = 2; p <= max_k; ++p) {
        bool prime = p >= 2;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (!prime) continue;
        long long pk = p;
        for (int a = 1; pk <= max_k; ++a, pk *= p) {
            const Rat closed = cyclic_second_moment_closed_form(p, a);
            const Rat divisor = cycle_count_moments_cyclic(static_cast<int>(pk)).second_moment();
            if (closed != divisor) out.push_back({p, a, closed, divisor});
        }
    }
    return out;
}

/// Descent moments of the block action on [k*n], from the pointwise
/// decomposition d(sigma) = sum_i d(gamma_i) + d(eta) and the classical
/// single-group moments. The (m+1)/12 variance is an m >= 2 formula; a
/// one-letter factor is constant and contributes nothing.
inline MomentPair wreath_descent_moments(int k, int n) {
    if (k < 1 || n < 1) throw std::invalid_argument("wreath_descent_moments: k, n >= 1");
    const Rat block_var = k >= 2 ? make_rat(Int(k + 1), 12) : Rat(0);
    const Rat outer_var = n >= 2 ? make_rat(Int(n + 1), 12) : Rat(0);
    Rat mean = Rat(n) * make_rat(Int(k - 1), 2) + make_rat(Int(n - 1), 2);
    Rat var = Rat(n) * block_var + outer_var;
    return {mean, var};
}

/// Inversion moments of the block action, from the decomposition
/// I(sigma) = k^2 I(eta) + sum_i I(gamma_i). Note these are the
/// decomposition-derived values; the displayed theorem constants disagree
/// (see inversion_moment_display_discrepancy) and full enumeration sides
/// with the decomposition.
inline MomentPair wreath_inversion_moments(int k, int n) {
    if (k < 1 || n < 1) throw std::invalid_argument("wreath_inversion_moments: k, n >= 1");
    const Rat k2 = Rat(k) * k;
    Rat mean = k2 * make_rat(Int(n) * (n - 1), 4) + Rat(n) * make_rat(Int(k) * (k - 1), 4);
    Rat var = k2 * k2 * make_rat(Int(n) * (n - 1) * (2 * n + 5), 72) +
              Rat(n) * make_rat(Int(k) * (k - 1) * (2 * k + 5), 72);
    return {mean, var};
}

/// The displayed (suspect) theorem constants, kept verbatim for reporting.
inline MomentPair wreath_inversion_moments_display(int k, int n) {
    const Rat k2 = Rat(k) * k;
    Rat mean = k2 * make_rat(Int(n) * (n - 1), 2) / 4;
    Rat var = k2 * k2 * make_rat(Int(n) * (n - 1) * (2 * n + 5), 72) +
              Rat(n) * make_rat(Int(k) * (k + 1) * (2 * k + 5), 72);
    return {mean, var};
}

/// Mean and variance of a nonnegative-integer law given by its PGF
/// coefficients (index = value).
inline MomentPair gf_moments(const UniPoly& gf) {
    Rat mean = 0, second = 0;
    for (std::size_t j = 0; j < gf.coeffs.size(); ++j) {
        mean += Rat(static_cast<unsigned long>(j)) * gf.coeffs[j];
        second += Rat(Int(static_cast<unsigned long>(j)) * static_cast<unsigned long>(j)) * gf.coeffs[j];
    }
    return {mean, second - mean * mean};
}

struct StoppedSumReport {
    bool ok = false;
    std::string detail;
};

/// Verifies, as exact polynomial identities, that the cycle-count generating
/// function of the block group composes as a randomly stopped sum:
///   C_{Gamma^n x| H}(x) = sum_j P_H(j) C_Gamma(x)^j
/// together with the mean identity E(C) = E_Gamma(C) E_H(C).
inline StoppedSumReport stopped_sum_check(const CycleIndexPoly& zGamma, const CycleIndexPoly& zH) {
    const UniPoly lhs = cycles_gf(wreath_compose(zH, zGamma));
    const UniPoly cg = cycles_gf(zGamma);
    const UniPoly ch = cycles_gf(zH);

    UniPoly rhs;
    UniPoly power;
    power.coeffs = {Rat(1)};
    for (std::size_t j = 0; j < ch.coeffs.size(); ++j) {
        if (j > 0) power = uni_mul(power, cg);
        if (ch.coeffs[j] == 0) continue;
        if (rhs.coeffs.size() < power.coeffs.size()) rhs.coeffs.resize(power.coeffs.size(), Rat(0));
        for (std::size_t m = 0; m < power.coeffs.size(); ++m)
            rhs.coeffs[m] += ch.coeffs[j] * power.coeffs[m];
    }
    UniPoly l = lhs, r = rhs;
    l.trim();
    r.trim();
    if (l != r) return {false, "generating-function identity failed"};

    const Rat mean_l = gf_moments(l).mean;
    const Rat mean_r = gf_moments(cg).mean * gf_moments(ch).mean;
    if (mean_l != mean_r) return {false, "mean identity failed"};
    return {true, "stopped-sum identity holds exactly"};
}

/// Exact mean/variance of the cycle count of the block action with n blocks:
/// a stopped sum of block cycle counts over the cycle count of a uniform
/// eta in S_n, whose exact moments are harmonic sums.
inline MomentPair wreath_cycle_count_moments(const CycleIndexPoly& zGamma, int n) {
    const MomentPair x = gf_moments(cycles_gf(zGamma));
    const Rat mean_n = harmonic(static_cast<unsigned>(n));
    const Rat var_n = mean_n - harmonic2(static_cast<unsigned>(n));
    return {x.mean * mean_n, mean_n * x.variance + var_n * x.mean * x.mean};
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// One-sample Kolmogorov-Smirnov statistic of the samples against N(0,1).
inline double ks_statistic_standard_normal(std::vector<double> samples) {
    if (samples.empty()) throw std::invalid_argument("ks: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = normal_cdf(samples[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    return d;
}

/// KS statistic of samples standardized by the given mean and sd.
inline double clt_report(const std::vector<double>& samples, double mean, double sd) {
    if (!(sd > 0)) throw std::invalid_argument("clt_report: degenerate sd");
    if (samples.size() < 1000) throw std::invalid_argument("clt_report: need >= 1000 samples");
    std::vector<double> z(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) z[i] = (samples[i] - mean) / sd;
    return ks_statistic_standard_normal(std::move(z));
}

/// Continuity correction for integer-valued statistics: dither each sample
/// by U(-1/2, 1/2) and widen the variance by 1/12. Without this a lattice
/// law has a KS floor of about pmf(mode)/2 against any continuous CDF, which
/// swamps the CLT error whenever the sd is small.
inline std::vector<double> dither_lattice_samples(const std::vector<long>& samples, Rng& rng) {
    std::vector<double> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        out[i] = static_cast<double>(samples[i]) + rng.uniform() - 0.5;
    return out;
}

/// Calibration default for KS thresholds: about the alpha = 0.01 asymptotic
/// quantile for N samples (not a theorem).
inline double ks_default_threshold(std::size_t n_samples) {
    return 1.63 / std::sqrt(static_cast<double>(n_samples));
}

}  // namespace wreathlab
