#pragma once

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "wreathlab/coupling.hpp"
#include "wreathlab/cycle_index.hpp"
#include "wreathlab/limit_laws.hpp"
#include "wreathlab/partition.hpp"
#include "wreathlab/rng.hpp"
#include "wreathlab/wreath.hpp"

namespace wreathlab {

/// A law over truncated count vectors (a_1,...,a_B), exact (rational) or
/// empirical (n_samples > 0). Support is kept sorted.
struct Distribution {
    std::vector<std::vector<int>> support;
    std::vector<double> probs;
    std::vector<Rat> exact_probs;  // parallel to support when exact
    std::size_t n_samples = 0;     // 0 = exact

    bool is_exact() const { return n_samples == 0; }

    static Distribution from_exact(const std::map<std::vector<int>, Rat>& law) {
        Distribution d;
        for (const auto& [vec, p] : law) {
            if (p == 0) continue;
            d.support.push_back(vec);
            d.exact_probs.push_back(p);
            d.probs.push_back(to_double(p));
        }
        return d;
    }

    static Distribution from_histogram(const std::map<std::vector<int>, long long>& hist,
                                       std::size_t n_samples) {
        Distribution d;
        d.n_samples = n_samples;
        for (const auto& [vec, c] : hist) {
            d.support.push_back(vec);
            d.probs.push_back(static_cast<double>(c) / static_cast<double>(n_samples));
        }
        return d;
    }
};

inline std::vector<int> type_to_counts(const Partition& type, int B) {
    std::vector<int> counts(B, 0);
    for (auto [part, mult] : type.entries())
        if (part <= B) counts[part - 1] = mult;
    return counts;
}

/// Exact joint law of (a_1..a_B) over an exhaustively enumerated block
/// group Gamma^n x| S_n.
inline Distribution census(const GroupSpec& gamma, int n, int B,
                           long long cap = kDefaultEnumerationCap) {
    std::map<std::vector<int>, long long> hist;
    long long total = 0;
    for_each_wreath(
        gamma, n,
        [&](const WreathElement&, const Permutation& sigma) {
            ++hist[type_to_counts(sigma.cycle_type(), B)];
            ++total;
        },
        cap);
    std::map<std::vector<int>, Rat> law;
    for (const auto& [vec, c] : hist)
        law.emplace(vec, make_rat(Int(static_cast<long>(c)), Int(static_cast<long>(total))));
    return Distribution::from_exact(law);
}

/// The same law read off a cycle index: coefficients grouped by truncated
/// count vector.
inline Distribution census_from_cycle_index(const CycleIndexPoly& z, int B) {
    std::map<std::vector<int>, Rat> law;
    for (const auto& [type, p] : z.terms()) law[type_to_counts(type, B)] += p;
    return Distribution::from_exact(law);
}

/// Exact census of the product action of S_k x S_n on the k-by-n grid.
inline Distribution census_product_action(int k, int n, int B,
                                          long long cap = kDefaultEnumerationCap) {
    const Int total = factorial(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(n));
    if (total > static_cast<long>(cap)) throw CapExceeded("product census: k! n! exceeds cap");
    const auto sigmas = GroupSpec::symmetric(k).elements();
    const auto taus = GroupSpec::symmetric(n).elements();
    std::map<std::vector<int>, long long> hist;
    std::vector<int> img(static_cast<std::size_t>(k) * n);
    for (const auto& sigma : sigmas) {
        for (const auto& tau : taus) {
            for (int i = 1; i <= k; ++i)
                for (int j = 1; j <= n; ++j)
                    img[(i - 1) * n + (j - 1)] = (sigma(i) - 1) * n + tau(j);
            ++hist[type_to_counts(Permutation::from_one_line(img).cycle_type(), B)];
        }
    }
    std::map<std::vector<int>, Rat> law;
    for (const auto& [vec, c] : hist) law.emplace(vec, make_rat(Int(static_cast<long>(c)), total));
    return Distribution::from_exact(law);
}

/// Total variation distance (1/2) sum |p - q| over the pooled support.
inline double tv(const Distribution& p, const Distribution& q) {
    double sum = 0;
    std::size_t i = 0, j = 0;
    while (i < p.support.size() || j < q.support.size()) {
        if (j == q.support.size() || (i < p.support.size() && p.support[i] < q.support[j]))
            sum += p.probs[i++];
        else if (i == p.support.size() || q.support[j] < p.support[i])
            sum += q.probs[j++];
        else
            sum += std::abs(p.probs[i++] - q.probs[j++]);
    }
    return sum / 2;
}

inline Rat tv_exact(const Distribution& p, const Distribution& q) {
    if (!p.is_exact() || !q.is_exact())
        throw std::invalid_argument("tv_exact: both distributions must be exact");
    Rat sum = 0;
    std::size_t i = 0, j = 0;
    while (i < p.support.size() || j < q.support.size()) {
        if (j == q.support.size() || (i < p.support.size() && p.support[i] < q.support[j]))
            sum += p.exact_probs[i++];
        else if (i == p.support.size() || q.support[j] < p.support[i])
            sum += q.exact_probs[j++];
        else {
            Rat d = p.exact_probs[i++] - q.exact_probs[j++];
            sum += d < 0 ? Rat(-d) : d;
        }
    }
    return sum / 2;
}

inline bool distributions_equal_exact(const Distribution& p, const Distribution& q) {
    return p.is_exact() && q.is_exact() && p.support == q.support &&
           p.exact_probs == q.exact_probs;
}

/// Plug-in Monte Carlo error of an empirical distribution: half the summed
/// binomial standard errors, (1/2) sum sqrt(p(1-p)/N). Bounded above by the
/// documented heuristic 1.3 sqrt(#support / n_samples) via Cauchy-Schwarz.
/// This is a bias + noise estimate for empirical TV, not a theorem.
inline double mc_error(const Distribution& d) {
    if (d.is_exact()) return 0;
    double sum = 0;
    for (double p : d.probs) sum += std::sqrt(p * (1 - p) / static_cast<double>(d.n_samples));
    return sum / 2;
}

/// Deterministic parallel histogram: thread t draws from RNG stream
/// (seed, stream_base + t) and histograms are merged in thread order, so the
/// result depends only on (seed, stream_base, threads, n_samples).
template <typename Fn>
std::map<std::vector<int>, long long> sample_histogram(Fn&& draw, long long n_samples,
                                                       std::uint64_t seed,
                                                       std::uint64_t stream_base, int threads) {
    if (n_samples < 1) throw std::invalid_argument("sample_histogram: n_samples < 1");
    threads = std::max(1, threads);
    std::vector<std::map<std::vector<int>, long long>> partial(threads);
    auto work = [&](int t) {
        Rng rng = Rng::stream_of(seed, stream_base + static_cast<std::uint64_t>(t));
        const long long quota = n_samples / threads + (t < n_samples % threads ? 1 : 0);
        std::vector<int> counts;
        auto& hist = partial[t];
        for (long long s = 0; s < quota; ++s) {
            draw(rng, counts);
            ++hist[counts];
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    std::map<std::vector<int>, long long> merged;
    for (const auto& hist : partial)
        for (const auto& [vec, c] : hist) merged[vec] += c;
    return merged;
}

struct BoundReport {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> params;
    bool has_bound = true;
    double bound = 0;
    double empirical_tv = 0;
    double mc_err = 0;
    bool pass = false;
    std::uint64_t seed = 0;
    long long runtime_ms = 0;
};

namespace harness_detail {

inline BoundReport finish_report(BoundReport report, const Distribution& mu,
                                 const Distribution& nu,
                                 std::chrono::steady_clock::time_point t0) {
    report.empirical_tv = tv(mu, nu);
    report.mc_err = mc_error(mu) + mc_error(nu);
    report.pass = !report.has_bound || report.empirical_tv <= report.bound + 3 * report.mc_err;
    report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return report;
}

}  // namespace harness_detail

/// Coupling samples of (a_1..a_B) at block count n versus samples of the
/// limit law, against the bound 2B/n. PASS means empirical TV does not
/// exceed bound + 3 * (Monte Carlo bias + noise); the slack keeps the
/// plug-in estimator's positive bias from producing spurious failures.
inline BoundReport check_tv_bound_wreath(const GroupSpec& gamma, int n, int B,
                                         long long n_samples, std::uint64_t seed,
                                         int threads = 1) {
    const auto t0 = std::chrono::steady_clock::now();
    BoundReport report;
    report.experiment = "tv-wreath";
    report.params = {{"gamma", gamma.to_string()},
                     {"n", std::to_string(n)},
                     {"B", std::to_string(B)},
                     {"samples", std::to_string(n_samples)},
                     {"threads", std::to_string(threads)}};
    report.seed = seed;
    report.bound = 2.0 * B / n;
    if (B == 0) {
        report.empirical_tv = 0;
        report.pass = true;
        return report;
    }

    const CycleTypeSampler types(gamma.cycle_index());
    auto mu_hist = sample_histogram(
        [&](Rng& rng, std::vector<int>& counts) { sample_coupled_counts(types, n, B, counts, rng); },
        n_samples, seed, 0, threads);

    const RationalCompoundSpec spec = build_spec(gamma.cycle_index(), Rat(1), B);
    auto nu_hist = sample_histogram(
        [&](Rng& rng, std::vector<int>& counts) {
            const auto draw = sample(spec, rng);
            counts.assign(draw.begin(), draw.end());
        },
        n_samples, seed, static_cast<std::uint64_t>(threads), threads);

    return harness_detail::finish_report(std::move(report),
                                         Distribution::from_histogram(mu_hist, n_samples),
                                         Distribution::from_histogram(nu_hist, n_samples), t0);
}

/// Doubly-indexed coupling at block size k versus its k -> infinity
/// companion, against the bound 5 B log B log k / k (stated for k >= 89;
/// smaller k reports no bound).
inline BoundReport check_tv_bound_skn(int k, int n, int B, long long n_samples,
                                      std::uint64_t seed, int threads = 1) {
    const auto t0 = std::chrono::steady_clock::now();
    BoundReport report;
    report.experiment = "tv-skn";
    report.params = {{"k", std::to_string(k)},
                     {"n", std::to_string(n)},
                     {"B", std::to_string(B)},
                     {"samples", std::to_string(n_samples)},
                     {"threads", std::to_string(threads)}};
    report.seed = seed;
    if (k >= 89) {
        report.bound = 5.0 * B * std::log(B) * std::log(k) / k;
    } else {
        report.has_bound = false;  // theorem hypothesis not met; TV still reported
    }
    if (B == 0) {
        report.empirical_tv = 0;
        report.pass = true;
        return report;
    }

    auto mu_hist = sample_histogram(
        [&](Rng& rng, std::vector<int>& counts) { sample_skn_counts(k, n, B, counts, rng); },
        n_samples, seed, 0, threads);
    auto nu_hist = sample_histogram(
        [&](Rng& rng, std::vector<int>& counts) { sample_skn_limit_counts(n, B, counts, rng); },
        n_samples, seed, static_cast<std::uint64_t>(threads), threads);

    return harness_detail::finish_report(std::move(report),
                                         Distribution::from_histogram(mu_hist, n_samples),
                                         Distribution::from_histogram(nu_hist, n_samples), t0);
}

/// Product-action coupling at sizes (k, n) versus the product limit law,
/// against the bound 2B/k + 2B/n.
inline BoundReport check_product_bound(int k, int n, int B, long long n_samples,
                                       std::uint64_t seed, int threads = 1) {
    const auto t0 = std::chrono::steady_clock::now();
    BoundReport report;
    report.experiment = "tv-product";
    report.params = {{"k", std::to_string(k)},
                     {"n", std::to_string(n)},
                     {"B", std::to_string(B)},
                     {"samples", std::to_string(n_samples)},
                     {"threads", std::to_string(threads)}};
    report.seed = seed;
    report.bound = 2.0 * B / k + 2.0 * B / n;
    if (B == 0) {
        report.empirical_tv = 0;
        report.pass = true;
        return report;
    }

    auto mu_hist = sample_histogram(
        [&](Rng& rng, std::vector<int>& counts) {
            sample_product_coupled_counts(k, n, B, counts, rng);
        },
        n_samples, seed, 0, threads);
    const ProductActionSpec spec{B};
    auto nu_hist = sample_histogram(
        [&](Rng& rng, std::vector<int>& counts) {
            const auto draw = sample_product_action(spec, rng);
            counts.assign(draw.begin(), draw.end());
        },
        n_samples, seed, static_cast<std::uint64_t>(threads), threads);

    return harness_detail::finish_report(std::move(report),
                                         Distribution::from_histogram(mu_hist, n_samples),
                                         Distribution::from_histogram(nu_hist, n_samples), t0);
}

struct ChiSquareReport {
    double statistic = 0;
    int df = 0;
    double p_value = 0;
};

/// Pearson chi-square against the uniform null. Requires >= 5 expected per
/// cell.
inline ChiSquareReport chi_square_uniform(const std::vector<long long>& counts) {
    if (counts.size() < 2) throw std::invalid_argument("chi_square_uniform: need >= 2 cells");
    long long total = 0;
    for (long long c : counts) total += c;
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    if (expected < 5) throw std::invalid_argument("chi_square_uniform: under-sampled cells");
    ChiSquareReport r;
    r.df = static_cast<int>(counts.size()) - 1;
    for (long long c : counts) {
        const double d = static_cast<double>(c) - expected;
        r.statistic += d * d / expected;
    }
    boost::math::chi_squared dist(r.df);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

/// Pearson chi-square against an arbitrary null law.
inline ChiSquareReport chi_square_gof(const std::vector<long long>& counts,
                                      const std::vector<double>& null_probs) {
    if (counts.size() != null_probs.size() || counts.size() < 2)
        throw std::invalid_argument("chi_square_gof: bad inputs");
    long long total = 0;
    for (long long c : counts) total += c;
    ChiSquareReport r;
    r.df = static_cast<int>(counts.size()) - 1;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = null_probs[i] * static_cast<double>(total);
        if (expected < 5) throw std::invalid_argument("chi_square_gof: under-sampled cells");
        const double d = static_cast<double>(counts[i]) - expected;
        r.statistic += d * d / expected;
    }
    boost::math::chi_squared dist(r.df);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

}  // namespace wreathlab
