#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wreathlab/cycle_index.hpp"
#include "wreathlab/permutation.hpp"
#include "wreathlab/rng.hpp"

namespace wreathlab {

inline constexpr long long kDefaultEnumerationCap = 10'000'000;
inline constexpr int kClosureCap = 10'000;

/// The block group Gamma <= S_k: full symmetric, cyclic, or an explicit
/// element list. Explicit lists are checked for identity, closure and
/// inverses at construction (up to the closure cap).
class GroupSpec {
  public:
    enum class Kind { Symmetric, Cyclic, Explicit };

    static GroupSpec symmetric(int k) { return GroupSpec(Kind::Symmetric, k, {}); }
    static GroupSpec cyclic(int k) { return GroupSpec(Kind::Cyclic, k, {}); }

    static GroupSpec explicit_group(std::vector<Permutation> elements) {
        if (elements.empty()) throw std::invalid_argument("explicit group: empty");
        const int k = elements.front().degree();
        std::set<Permutation> members(elements.begin(), elements.end());
        if (members.size() != elements.size())
            throw std::invalid_argument("explicit group: duplicate elements");
        if (static_cast<int>(elements.size()) <= kClosureCap) {
            if (!members.count(Permutation::identity(k)))
                throw std::invalid_argument("explicit group: identity missing");
            for (const auto& a : elements) {
                if (a.degree() != k) throw std::invalid_argument("explicit group: degree mismatch");
                if (!members.count(a.inverse()))
                    throw std::invalid_argument("explicit group: not closed under inverse");
                for (const auto& b : elements)
                    if (!members.count(compose(a, b)))
                        throw std::invalid_argument("explicit group: not closed under composition");
            }
        }
        std::sort(elements.begin(), elements.end());
        return GroupSpec(Kind::Explicit, k, std::move(elements));
    }

    /// "S3", "C4".
    static GroupSpec parse(const std::string& text) {
        if (text.size() < 2 || (text[0] != 'S' && text[0] != 'C'))
            throw std::invalid_argument("group spec must be S<k> or C<k>: " + text);
        int k = 0;
        try {
            k = std::stoi(text.substr(1));
        } catch (const std::exception&) {
            throw std::invalid_argument("group spec must be S<k> or C<k>: " + text);
        }
        if (k < 1) throw std::invalid_argument("group spec: k < 1");
        return text[0] == 'S' ? symmetric(k) : cyclic(k);
    }

    Kind kind() const { return kind_; }
    int block_size() const { return k_; }

    Int order() const {
        switch (kind_) {
            case Kind::Symmetric: return factorial(static_cast<unsigned>(k_));
            case Kind::Cyclic: return Int(k_);
            case Kind::Explicit: return Int(static_cast<unsigned long>(explicit_.size()));
        }
        throw std::logic_error("unreachable");
    }

    CycleIndexPoly cycle_index() const {
        switch (kind_) {
            case Kind::Symmetric: return build_symmetric(k_);
            case Kind::Cyclic: return build_cyclic(k_);
            case Kind::Explicit: return from_elements(explicit_);
        }
        throw std::logic_error("unreachable");
    }

    /// All elements, in a deterministic order. Symmetric groups are
    /// enumerated on demand; mind the factorial growth.
    std::vector<Permutation> elements() const {
        switch (kind_) {
            case Kind::Explicit: return explicit_;
            case Kind::Cyclic: {
                std::vector<Permutation> out;
                out.reserve(k_);
                std::vector<int> img(k_);
                for (int s = 0; s < k_; ++s) {
                    for (int i = 0; i < k_; ++i) img[i] = (i + s) % k_ + 1;
                    out.push_back(Permutation::from_one_line(img));
                }
                return out;
            }
            case Kind::Symmetric: {
                std::vector<Permutation> out;
                std::vector<int> img(k_);
                for (int i = 0; i < k_; ++i) img[i] = i + 1;
                do {
                    out.push_back(Permutation::from_one_line(img));
                } while (std::next_permutation(img.begin(), img.end()));
                return out;
            }
        }
        throw std::logic_error("unreachable");
    }

    Permutation sample(Rng& rng) const {
        switch (kind_) {
            case Kind::Symmetric: {
                std::vector<int> img(k_);
                for (int i = 0; i < k_; ++i) img[i] = i + 1;
                for (int i = k_ - 1; i > 0; --i)
                    std::swap(img[i], img[rng.uniform_below(static_cast<std::uint64_t>(i) + 1)]);
                return Permutation::from_one_line(img);
            }
            case Kind::Cyclic: {
                const int s = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(k_)));
                std::vector<int> img(k_);
                for (int i = 0; i < k_; ++i) img[i] = (i + s) % k_ + 1;
                return Permutation::from_one_line(img);
            }
            case Kind::Explicit:
                return explicit_[rng.uniform_below(explicit_.size())];
        }
        throw std::logic_error("unreachable");
    }

    std::string to_string() const {
        switch (kind_) {
            case Kind::Symmetric: return "S" + std::to_string(k_);
            case Kind::Cyclic: return "C" + std::to_string(k_);
            case Kind::Explicit:
                return "explicit(" + std::to_string(explicit_.size()) + " elements of degree " +
                       std::to_string(k_) + ")";
        }
        throw std::logic_error("unreachable");
    }

  private:
    GroupSpec(Kind kind, int k, std::vector<Permutation> elements)
        : kind_(kind), k_(k), explicit_(std::move(elements)) {
        if (k_ < 1) throw std::invalid_argument("group spec: block size < 1");
    }

    Kind kind_;
    int k_;
    std::vector<Permutation> explicit_;
};

/// The subgroup generated by the given permutations, as an explicit list.
/// Breadth-first closure under composition; throws CapExceeded past the cap.
inline GroupSpec subgroup_closure(const std::vector<Permutation>& generators,
                                  int cap = kClosureCap) {
    if (generators.empty()) throw std::invalid_argument("subgroup_closure: no generators");
    const int k = generators.front().degree();
    for (const auto& g : generators)
        if (g.degree() != k) throw std::invalid_argument("subgroup_closure: degree mismatch");
    std::set<Permutation> members{Permutation::identity(k)};
    std::vector<Permutation> frontier{Permutation::identity(k)};
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& a : frontier) {
            for (const auto& g : generators) {
                Permutation c = compose(g, a);
                if (members.insert(c).second) {
                    if (static_cast<int>(members.size()) > cap)
                        throw CapExceeded("subgroup_closure: size cap exceeded");
                    next.push_back(std::move(c));
                }
            }
        }
        frontier = std::move(next);
    }
    return GroupSpec::explicit_group({members.begin(), members.end()});
}

/// One element of Gamma^n x| S_n: per-block permutations plus the block
/// permutation eta (one-line at the interface).
struct WreathElement {
    std::vector<Permutation> gammas;
    Permutation eta;

    int blocks() const { return eta.degree(); }
    int block_size() const { return gammas.empty() ? 0 : gammas.front().degree(); }

    void validate() const {
        if (static_cast<int>(gammas.size()) != eta.degree())
            throw std::invalid_argument("wreath element: gamma count != degree of eta");
        for (const auto& g : gammas)
            if (g.degree() != block_size())
                throw std::invalid_argument("wreath element: block degree mismatch");
    }

    /// "[(1 3 2),(1)(2 3),(3 1 2),()];(1 4 3 2)" with cycle notation on both
    /// sides and "()" for identity.
    std::string to_literal() const {
        std::string s = "[";
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            if (i) s += ',';
            s += gammas[i].to_cycles();
        }
        s += "];" + eta.to_cycles();
        return s;
    }

    static WreathElement parse_literal(const std::string& text, int k, int n) {
        auto open = text.find('[');
        auto close = text.find("];");
        if (open != 0 || close == std::string::npos)
            throw std::invalid_argument("element literal must look like [g1,...,gn];eta");
        WreathElement w;
        std::string inner = text.substr(1, close - 1);
        std::size_t pos = 0;
        int depth = 0;
        std::string cur;
        auto flush = [&] {
            w.gammas.push_back(Permutation::parse_cycles(cur, k));
            cur.clear();
        };
        for (; pos < inner.size(); ++pos) {
            char c = inner[pos];
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                flush();
                continue;
            }
            cur += c;
        }
        if (!cur.empty() || w.gammas.empty()) flush();
        w.eta = Permutation::parse_cycles(text.substr(close + 2), n);
        if (static_cast<int>(w.gammas.size()) != n)
            throw std::invalid_argument("element literal: expected " + std::to_string(n) +
                                        " block permutations");
        w.validate();
        return w;
    }
};

/// Uniform element: each gamma_i uniform on Gamma independently, eta uniform
/// on S_n independently.
inline WreathElement sample_uniform(const GroupSpec& gamma, int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_uniform: n < 1");
    WreathElement w;
    w.gammas.reserve(n);
    for (int i = 0; i < n; ++i) w.gammas.push_back(gamma.sample(rng));
    w.eta = GroupSpec::symmetric(n).sample(rng);
    return w;
}

/// The permutation of [k*n] induced by w: block place p receives old block
/// eta(p), permuted within by gamma_{eta(p)}. Concretely
///   sigma((p-1)k + j) = (eta(p)-1)k + gamma_{eta(p)}(j).
/// This is the unique convention reproducing the worked block-action
/// examples; the descent/inversion decomposition tests pin it down.
inline Permutation induced_permutation(const WreathElement& w) {
    w.validate();
    const int k = w.block_size();
    const int n = w.blocks();
    std::vector<int> img(static_cast<std::size_t>(k) * n);
    for (int p = 1; p <= n; ++p) {
        const int src = w.eta(p);
        const Permutation& g = w.gammas[src - 1];
        for (int j = 1; j <= k; ++j) img[(p - 1) * k + (j - 1)] = (src - 1) * k + g(j);
    }
    return Permutation::from_one_line(img);
}

/// Visit every element of Gamma^n x| S_n exactly once (oracle support).
/// Throws CapExceeded if |Gamma|^n n! exceeds the cap.
inline void for_each_wreath(const GroupSpec& gamma, int n,
                            const std::function<void(const WreathElement&, const Permutation&)>& fn,
                            long long cap = kDefaultEnumerationCap) {
    Int total = 1;
    for (int i = 0; i < n; ++i) total *= gamma.order();
    total *= factorial(static_cast<unsigned>(n));
    if (total > static_cast<long>(cap))
        throw CapExceeded("wreath enumeration: |Gamma|^n n! exceeds cap");

    const auto block_elements = gamma.elements();
    const auto etas = GroupSpec::symmetric(n).elements();
    WreathElement w;
    w.gammas.assign(n, block_elements.front());
    std::vector<std::size_t> odometer(n, 0);
    for (;;) {
        for (const auto& eta : etas) {
            w.eta = eta;
            fn(w, induced_permutation(w));
        }
        int pos = 0;
        while (pos < n) {
            if (++odometer[pos] < block_elements.size()) {
                w.gammas[pos] = block_elements[odometer[pos]];
                break;
            }
            odometer[pos] = 0;
            w.gammas[pos] = block_elements[0];
            ++pos;
        }
        if (pos == n) break;
    }
}

}  // namespace wreathlab
