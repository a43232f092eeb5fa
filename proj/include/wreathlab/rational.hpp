#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace wreathlab {

// Exact arithmetic types. z-weights overflow 64 bits near weight 25 and the
// acceptance surface demands exact rational equality, so everything exact
// runs on GMP.
using Int = mpz_class;
using Rat = mpq_class;

inline double to_double(const Rat& q) { return q.get_d(); }

// mpq_class(num, den) does NOT canonicalize; every fraction built from a
// possibly non-coprime pair must go through here.
inline Rat make_rat(const Int& num, const Int& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Int factorial(unsigned n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// "num/den" with the denominator omitted when 1.
inline std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    q.canonicalize();
    return q;
}

// Enumeration budgets blow up combinatorially; oversized requests are
// reported instead of attempted.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace wreathlab
