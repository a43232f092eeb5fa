#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "wreathlab/rational.hpp"

namespace wreathlab {

/// Euler's totient: #{1 <= j <= n : gcd(j, n) = 1}.
inline std::uint64_t totient(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("totient(0)");
    std::uint64_t result = n;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

/// Divisors of n in ascending order.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("divisors(0)");
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }
inline std::uint64_t lcm_u(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

/// Exact harmonic number H_n = sum_{i<=n} 1/i.
inline Rat harmonic(unsigned n) {
    Rat h = 0;
    for (unsigned i = 1; i <= n; ++i) h += Rat(1, i);
    return h;
}

/// Exact sum_{i<=n} 1/i^2 (second-order harmonic).
inline Rat harmonic2(unsigned n) {
    Rat h = 0;
    for (unsigned i = 1; i <= n; ++i) h += Rat(1, Int(i) * i);
    return h;
}

}  // namespace wreathlab
