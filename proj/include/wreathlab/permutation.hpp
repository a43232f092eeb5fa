#pragma once

#include <algorithm>
#include <compare>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wreathlab/partition.hpp"

namespace wreathlab {

/// Permutation of {1,...,m}. Interfaces are 1-based; storage is 0-based.
class Permutation {
  public:
    Permutation() = default;

    static Permutation identity(int degree) {
        Permutation p;
        p.img_.resize(degree);
        for (int i = 0; i < degree; ++i) p.img_[i] = i;
        return p;
    }

    /// From 1-based images, e.g. {6,5,2,1,3,4}.
    static Permutation from_one_line(const std::vector<int>& images) {
        Permutation p;
        p.img_.reserve(images.size());
        for (int v : images) p.img_.push_back(v - 1);
        p.validate();
        return p;
    }

    int degree() const { return static_cast<int>(img_.size()); }

    /// sigma(i), 1-based.
    int operator()(int i) const { return img_[i - 1] + 1; }

    std::vector<int> one_line() const {
        std::vector<int> out(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) out[i] = img_[i] + 1;
        return out;
    }

    Permutation inverse() const {
        Permutation q;
        q.img_.resize(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) q.img_[img_[i]] = static_cast<int>(i);
        return q;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != static_cast<int>(i)) return false;
        return true;
    }

    Partition cycle_type() const {
        std::vector<int> lengths;
        std::vector<char> seen(img_.size(), 0);
        for (std::size_t s = 0; s < img_.size(); ++s) {
            if (seen[s]) continue;
            int len = 0;
            for (std::size_t x = s; !seen[x]; x = img_[x]) {
                seen[x] = 1;
                ++len;
            }
            lengths.push_back(len);
        }
        return Partition::from_parts(lengths);
    }

    /// Cycle notation, fixed points suppressed; identity prints "()".
    std::string to_cycles() const {
        std::string s;
        std::vector<char> seen(img_.size(), 0);
        for (std::size_t start = 0; start < img_.size(); ++start) {
            if (seen[start] || img_[start] == static_cast<int>(start)) continue;
            s += '(';
            bool first = true;
            for (std::size_t x = start; !seen[x]; x = img_[x]) {
                seen[x] = 1;
                if (!first) s += ' ';
                s += std::to_string(x + 1);
                first = false;
            }
            s += ')';
        }
        return s.empty() ? "()" : s;
    }

    /// Parse cycle notation "(1 3 2)(4 5)" over a known degree; "()" is the
    /// identity. Commas inside a cycle are accepted as separators too.
    static Permutation parse_cycles(const std::string& text, int degree) {
        Permutation p = identity(degree);
        std::size_t pos = 0;
        while (pos < text.size()) {
            if (std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
                continue;
            }
            if (text[pos] != '(') throw std::invalid_argument("expected '(' in " + text);
            auto close = text.find(')', pos);
            if (close == std::string::npos) throw std::invalid_argument("unbalanced '(' in " + text);
            std::string body = text.substr(pos + 1, close - pos - 1);
            for (char& c : body)
                if (c == ',') c = ' ';
            std::istringstream in(body);
            std::vector<int> cyc;
            int v;
            while (in >> v) {
                if (v < 1 || v > degree) throw std::invalid_argument("cycle entry out of range: " + text);
                cyc.push_back(v - 1);
            }
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                int from = cyc[i], to = cyc[(i + 1) % cyc.size()];
                if (p.img_[from] != from) throw std::invalid_argument("repeated entry in " + text);
                p.img_[from] = to;
            }
            pos = close + 1;
        }
        p.validate();
        return p;
    }

    bool operator==(const Permutation& other) const = default;
    std::strong_ordering operator<=>(const Permutation& other) const = default;

  private:
    void validate() const {
        std::vector<char> seen(img_.size(), 0);
        for (int v : img_) {
            if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
                throw std::invalid_argument("images are not a bijection");
            seen[v] = 1;
        }
    }

    std::vector<int> img_;

    friend Permutation compose(const Permutation&, const Permutation&);
};

/// (p . q)(i) = p(q(i)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) throw std::invalid_argument("compose: degree mismatch");
    Permutation r;
    r.img_.resize(q.img_.size());
    for (std::size_t i = 0; i < q.img_.size(); ++i) r.img_[i] = p.img_[q.img_[i]];
    return r;
}

}  // namespace wreathlab
