#pragma once

#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wreathlab/numtheory.hpp"
#include "wreathlab/partition.hpp"
#include "wreathlab/permutation.hpp"
#include "wreathlab/rational.hpp"

namespace wreathlab {

/// Monomial exponents of a cycle-index term: e_i is stored as the
/// multiplicity of part i, so a monomial is literally a cycle type.
using ExponentVec = Partition;

/// Cycle index of a permutation group acting on [degree]: the average of
/// prod_i x_i^{a_i(s)} over group elements. Every coefficient is a strictly
/// positive exact rational; coefficients sum to exactly 1; every monomial is
/// homogeneous of weighted degree equal to the permuted-set size. The
/// coefficient attached to a monomial is precisely the probability that a
/// uniform element has that cycle type.
class CycleIndexPoly {
  public:
    using Terms = std::map<ExponentVec, Rat>;

    CycleIndexPoly(long long degree, Terms terms) : degree_(degree), terms_(std::move(terms)) {
        validate();
    }

    long long degree() const { return degree_; }
    const Terms& terms() const { return terms_; }

    /// Coefficient of the monomial matching this cycle type, or 0.
    Rat prob_of_type(const Partition& type) const {
        if (type.weight() != degree_)
            throw std::invalid_argument("prob_of_type: weight does not match degree");
        auto it = terms_.find(type);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    bool operator==(const CycleIndexPoly& other) const = default;

    /// Display form, e.g. "1/8 {x1^4 + 2 x1^2 x2 + 3 x2^2 + 2 x4}" when all
    /// coefficients share a denominator, else a plain sum of c * monomial.
    std::string to_display_string() const;

    void validate() const {
        Rat total = 0;
        for (const auto& [mono, coeff] : terms_) {
            if (coeff <= 0) throw std::invalid_argument("cycle index: nonpositive coefficient");
            if (mono.weight() != degree_)
                throw std::invalid_argument("cycle index: inhomogeneous monomial");
            total += coeff;
        }
        if (total != 1) throw std::invalid_argument("cycle index: coefficients do not sum to 1");
    }

  private:
    long long degree_ = 0;
    Terms terms_;
};

namespace poly_detail {

using Terms = CycleIndexPoly::Terms;

inline void add_term(Terms& t, const ExponentVec& mono, const Rat& c) {
    auto [it, inserted] = t.emplace(mono, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

inline Terms mul(const Terms& a, const Terms& b) {
    Terms out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) add_term(out, ma.merged_with(mb), ca * cb);
    return out;
}

inline Terms pow(const Terms& base, int e) {
    Terms out;
    out.emplace(ExponentVec{}, Rat(1));
    for (int i = 0; i < e; ++i) out = mul(out, base);
    return out;
}

// x_j -> x_{j*c} on every monomial.
inline Terms scale_vars(const Terms& t, int c) {
    Terms out;
    for (const auto& [mono, coeff] : t) out.emplace(mono.scaled(c), coeff);
    return out;
}

}  // namespace poly_detail

/// Z_{C_n} = (1/n) sum_{d|n} phi(d) x_d^{n/d}.
inline CycleIndexPoly build_cyclic(int n) {
    if (n < 1) throw std::invalid_argument("build_cyclic: n < 1");
    CycleIndexPoly::Terms terms;
    for (auto d : divisors(static_cast<std::uint64_t>(n))) {
        const int di = static_cast<int>(d);
        terms.emplace(Partition::from_mults({{di, n / di}}),
                      make_rat(Int(static_cast<unsigned long>(totient(d))), Int(n)));
    }
    return CycleIndexPoly(n, std::move(terms));
}

/// Z_{S_n} = sum_{lambda |- n} x^lambda / z_lambda.
inline CycleIndexPoly build_symmetric(int n) {
    if (n < 0) throw std::invalid_argument("build_symmetric: n < 0");
    CycleIndexPoly::Terms terms;
    for (const auto& lam : partitions_of(n)) terms.emplace(lam, Rat(1) / Rat(lam.z_weight()));
    return CycleIndexPoly(n, std::move(terms));
}

/// Empirical average of cycle-type monomials over the listed elements. The
/// caller asserts the list forms a group; only identity membership and a
/// common degree are checked.
inline CycleIndexPoly from_elements(const std::vector<Permutation>& elements) {
    if (elements.empty()) throw std::invalid_argument("from_elements: empty input");
    const int degree = elements.front().degree();
    bool has_identity = false;
    CycleIndexPoly::Terms terms;
    const Rat share(1, static_cast<unsigned long>(elements.size()));
    for (const auto& p : elements) {
        if (p.degree() != degree) throw std::invalid_argument("from_elements: degree mismatch");
        has_identity = has_identity || p.is_identity();
        poly_detail::add_term(terms, p.cycle_type(), share);
    }
    if (!has_identity) throw std::invalid_argument("from_elements: identity not present");
    return CycleIndexPoly(degree, std::move(terms));
}

/// Cycle index of the block action built over zH: substitute for each
/// variable t_i of zH a copy of zGamma with its variable indices multiplied
/// by i. Yields the cycle index of Gamma^n x| H acting on [k*n].
inline CycleIndexPoly wreath_compose(const CycleIndexPoly& zH, const CycleIndexPoly& zGamma) {
    CycleIndexPoly::Terms out;
    for (const auto& [mono, coeff] : zH.terms()) {
        poly_detail::Terms term;
        term.emplace(ExponentVec{}, Rat(1));
        for (auto [i, e] : mono.entries()) {
            auto scaled = poly_detail::scale_vars(zGamma.terms(), i);
            term = poly_detail::mul(term, poly_detail::pow(scaled, e));
        }
        for (const auto& [m, c] : term) poly_detail::add_term(out, m, coeff * c);
    }
    return CycleIndexPoly(zH.degree() * zGamma.degree(), std::move(out));
}

/// Cycle index of the product action of A x B on the k-by-n grid: each pair
/// of variables (x_i, x_j) combines into x_{lcm(i,j)}^{gcd(i,j) e_i f_j}.
inline CycleIndexPoly product_compose(const CycleIndexPoly& zA, const CycleIndexPoly& zB) {
    CycleIndexPoly::Terms out;
    for (const auto& [ma, ca] : zA.terms()) {
        for (const auto& [mb, cb] : zB.terms()) {
            Partition mono;
            for (auto [i, ei] : ma.entries())
                for (auto [j, fj] : mb.entries())
                    mono.add_part(static_cast<int>(lcm_u(i, j)),
                                  static_cast<int>(gcd_u(i, j)) * ei * fj);
            poly_detail::add_term(out, mono, ca * cb);
        }
    }
    return CycleIndexPoly(zA.degree() * zB.degree(), std::move(out));
}

/// Univariate polynomial with exact rational coefficients, index = power.
struct UniPoly {
    std::vector<Rat> coeffs;

    long long degree() const { return static_cast<long long>(coeffs.size()) - 1; }

    Rat at(std::size_t j) const { return j < coeffs.size() ? coeffs[j] : Rat(0); }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool operator==(const UniPoly& other) const = default;
};

inline UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    UniPoly out;
    if (a.coeffs.empty() || b.coeffs.empty()) return out;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
}

/// Substitute x_i = x for all i: the generating function of the number of
/// cycles, C_G(x) = sum_j P(C = j) x^j.
inline UniPoly cycles_gf(const CycleIndexPoly& z) {
    UniPoly out;
    for (const auto& [mono, coeff] : z.terms()) {
        const std::size_t j = static_cast<std::size_t>(mono.part_count());
        if (out.coeffs.size() <= j) out.coeffs.resize(j + 1, Rat(0));
        out.coeffs[j] += coeff;
    }
    return out;
}

/// Substitute 1 for every variable not in `keep`; coefficients of collapsed
/// monomials merge. The result is no longer homogeneous, so it is returned
/// as a bare term map (still summing to 1).
inline CycleIndexPoly::Terms marginal_gf(const CycleIndexPoly& z, const std::set<int>& keep) {
    CycleIndexPoly::Terms out;
    for (const auto& [mono, coeff] : z.terms()) {
        Partition reduced;
        for (auto [i, e] : mono.entries())
            if (keep.count(i)) reduced.add_part(i, e);
        poly_detail::add_term(out, reduced, coeff);
    }
    return out;
}

inline std::string CycleIndexPoly::to_display_string() const {
    Int common_den = 1;
    for (const auto& [mono, coeff] : terms_) {
        Int den = coeff.get_den();
        common_den = common_den / gcd(common_den, den) * den;
    }
    std::string body;
    for (const auto& [mono, coeff] : terms_) {
        if (!body.empty()) body += " + ";
        const Int scaled = coeff.get_num() * (common_den / coeff.get_den());
        std::string term;
        if (scaled != 1 || mono.empty()) term = scaled.get_str();
        for (auto [i, e] : mono.entries()) {
            if (!term.empty()) term += ' ';
            term += "x" + std::to_string(i);
            if (e > 1) term += "^" + std::to_string(e);
        }
        body += term;
    }
    if (common_den == 1) return body;
    return "1/" + common_den.get_str() + " {" + body + "}";
}

}  // namespace wreathlab
