#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace wreathlab {

// Deterministic randomness. The engine is std::mt19937_64, whose output
// sequence is pinned by the standard; all distributions are drawn with the
// hand-rolled transforms below, never with std:: distributions (those are
// implementation-defined and would break byte-identical output).
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1))) {}

    /// Stream derivation rule: stream s of seed x is seeded with
    /// splitmix64(x + (s+1)*golden). Documented so parallel runs are
    /// reproducible independent of thread count.
    static Rng stream_of(std::uint64_t seed, std::uint64_t stream) { return Rng(seed, stream); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on {0,...,bound-1} by rejection (unbiased).
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("uniform_below(0)");
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Poisson via Knuth's product of uniforms; all rates here are O(1).
    long poisson(double lambda) {
        if (lambda < 0) throw std::invalid_argument("poisson: negative rate");
        if (lambda == 0) return 0;
        if (lambda > 60) throw std::invalid_argument("poisson: rate too large for this sampler");
        const double floor_p = std::exp(-lambda);
        long k = 0;
        double prod = uniform();
        while (prod > floor_p) {
            ++k;
            prod *= uniform();
        }
        return k;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

/// Walker/Vose alias table for a fixed discrete distribution. Construction
/// and draws are deterministic given the input order.
class AliasTable {
  public:
    explicit AliasTable(const std::vector<double>& weights) {
        const std::size_t n = weights.size();
        if (n == 0) throw std::invalid_argument("alias table: empty distribution");
        double total = 0;
        for (double w : weights) {
            if (w < 0) throw std::invalid_argument("alias table: negative weight");
            total += w;
        }
        if (total <= 0) throw std::invalid_argument("alias table: zero mass");
        prob_.assign(n, 0.0);
        alias_.assign(n, 0);
        std::vector<double> scaled(n);
        for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * n / total;
        std::vector<std::uint32_t> small, large;
        for (std::size_t i = 0; i < n; ++i)
            (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
        while (!small.empty() && !large.empty()) {
            std::uint32_t s = small.back(), l = large.back();
            small.pop_back();
            large.pop_back();
            prob_[s] = scaled[s];
            alias_[s] = l;
            scaled[l] = scaled[l] + scaled[s] - 1.0;
            (scaled[l] < 1.0 ? small : large).push_back(l);
        }
        for (std::uint32_t i : large) prob_[i] = 1.0;
        for (std::uint32_t i : small) prob_[i] = 1.0;  // rounding leftovers
    }

    std::size_t draw(Rng& rng) const {
        const std::size_t i = static_cast<std::size_t>(rng.uniform_below(prob_.size()));
        return rng.uniform() < prob_[i] ? i : alias_[i];
    }

    std::size_t size() const { return prob_.size(); }

  private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

}  // namespace wreathlab
