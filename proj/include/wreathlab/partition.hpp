#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wreathlab/rational.hpp"

namespace wreathlab {

/// Integer partition in multiplicity form: a sparse, ascending list of
/// (part, multiplicity) with every stored multiplicity strictly positive.
/// Doubles as the cycle type of a permutation (a_i = multiplicity of i) and
/// as the exponent vector of a cycle-index monomial (e_i = multiplicity).
class Partition {
  public:
    using Entry = std::pair<int, int>;  // (part, multiplicity)

    Partition() = default;

    /// From unsorted parts, e.g. {3, 1, 3} -> 1 3^2.
    static Partition from_parts(std::vector<int> parts) {
        std::sort(parts.begin(), parts.end());
        Partition p;
        for (int v : parts) {
            if (v <= 0) throw std::invalid_argument("nonpositive part");
            if (!p.entries_.empty() && p.entries_.back().first == v)
                ++p.entries_.back().second;
            else
                p.entries_.push_back({v, 1});
        }
        p.recompute_weight();
        return p;
    }

    /// From (part, multiplicity) pairs; zero multiplicities are dropped.
    static Partition from_mults(std::vector<Entry> entries) {
        std::sort(entries.begin(), entries.end());
        Partition p;
        for (auto [part, mult] : entries) {
            if (part <= 0) throw std::invalid_argument("nonpositive part");
            if (mult < 0) throw std::invalid_argument("negative multiplicity");
            if (mult == 0) continue;
            if (!p.entries_.empty() && p.entries_.back().first == part)
                p.entries_.back().second += mult;
            else
                p.entries_.push_back({part, mult});
        }
        p.recompute_weight();
        return p;
    }

    const std::vector<Entry>& entries() const { return entries_; }
    long long weight() const { return weight_; }
    bool empty() const { return entries_.empty(); }

    /// Number of parts, counted with multiplicity (= cycle count of the type).
    long long part_count() const {
        long long c = 0;
        for (auto [part, mult] : entries_) c += mult;
        return c;
    }

    /// Multiplicity of part i (0 when absent).
    int mult_of(int i) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{i, 0});
        return (it != entries_.end() && it->first == i) ? it->second : 0;
    }

    int largest_part() const { return entries_.empty() ? 0 : entries_.back().first; }

    void add_part(int part, int mult = 1) {
        if (part <= 0) throw std::invalid_argument("nonpositive part");
        if (mult == 0) return;
        if (mult < 0) throw std::invalid_argument("negative multiplicity");
        auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{part, 0});
        if (it != entries_.end() && it->first == part)
            it->second += mult;
        else
            entries_.insert(it, {part, mult});
        weight_ += static_cast<long long>(part) * mult;
    }

    /// Multiset union: multiplicities add. Also the product of monomials.
    Partition merged_with(const Partition& other) const {
        Partition out = *this;
        for (auto [part, mult] : other.entries_) out.add_part(part, mult);
        return out;
    }

    /// All parts multiplied by c (the index substitution x_j -> x_{j*c}).
    Partition scaled(int c) const {
        if (c <= 0) throw std::invalid_argument("nonpositive scale");
        Partition out;
        out.entries_.reserve(entries_.size());
        for (auto [part, mult] : entries_) out.entries_.push_back({part * c, mult});
        out.weight_ = weight_ * c;
        return out;
    }

    /// z = prod_i i^{a_i} a_i!, the centralizer order of this cycle type.
    Int z_weight() const {
        Int z = 1;
        for (auto [part, mult] : entries_) {
            Int pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(part),
                          static_cast<unsigned long>(mult));
            z *= pw * factorial(static_cast<unsigned>(mult));
        }
        return z;
    }

    /// Text form "1^3 2": ascending parts, ^mult omitted when 1.
    std::string to_string() const {
        std::string s;
        for (auto [part, mult] : entries_) {
            if (!s.empty()) s += ' ';
            s += std::to_string(part);
            if (mult > 1) s += '^' + std::to_string(mult);
        }
        return s;
    }

    static Partition parse(const std::string& text) {
        Partition p;
        std::istringstream in(text);
        std::string tok;
        while (in >> tok) {
            auto caret = tok.find('^');
            int part = 0, mult = 1;
            try {
                part = std::stoi(tok.substr(0, caret));
                if (caret != std::string::npos) mult = std::stoi(tok.substr(caret + 1));
            } catch (const std::exception&) {
                throw std::invalid_argument("bad partition token: " + tok);
            }
            if (part <= 0 || mult <= 0)
                throw std::invalid_argument("bad partition token: " + tok);
            p.add_part(part, mult);
        }
        return p;
    }

    bool operator==(const Partition& other) const { return entries_ == other.entries_; }

    /// Canonical order: lexicographic on the ascending part list. Equivalent
    /// to lexicographic on (part, -mult) entry pairs; verified against the
    /// list form by tests.
    std::strong_ordering operator<=>(const Partition& other) const {
        auto a = entries_.begin(), b = other.entries_.begin();
        for (; a != entries_.end() && b != other.entries_.end(); ++a, ++b) {
            if (a->first != b->first) return a->first <=> b->first;
            if (a->second != b->second) return b->second <=> a->second;
        }
        return (entries_.end() - a) <=> (other.entries_.end() - b);
    }

  private:
    void recompute_weight() {
        weight_ = 0;
        for (auto [part, mult] : entries_) weight_ += static_cast<long long>(part) * mult;
    }

    std::vector<Entry> entries_;
    long long weight_ = 0;
};

/// All partitions of n, each exactly once, in canonical order.
inline std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw std::invalid_argument("partitions_of(negative)");
    std::vector<Partition> out;
    std::vector<int> stack;
    // Descending-parts recursion; canonical order restored by the final sort.
    auto rec = [&](auto&& self, int rest, int maxp) -> void {
        if (rest == 0) {
            out.push_back(Partition::from_parts(stack));
            return;
        }
        for (int p = std::min(rest, maxp); p >= 1; --p) {
            stack.push_back(p);
            self(self, rest - p, p);
            stack.pop_back();
        }
    };
    rec(rec, n, n == 0 ? 1 : n);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace wreathlab
