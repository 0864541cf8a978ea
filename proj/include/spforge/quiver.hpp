/*
   Copyright 2026 The spforge authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef SPFORGE_QUIVER_HPP
#define SPFORGE_QUIVER_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spforge/linalg.hpp"

namespace spforge {

struct Arrow {
    std::string name;
    long tail = -1;
    long head = -1;
};

/// A path: either a trivial path at a vertex, or a word of arrow ids stored
/// head-side first, i.e. the displayed order p = a_r ... a_1. Consecutive
/// stored entries w_j, w_{j+1} satisfy h(w_{j+1}) = t(w_j).
class Path {
   public:
    Path() = default;

    static Path trivial(long vertex) {
        Path p;
        p.vertex_ = vertex;
        return p;
    }
    static Path word(std::vector<int> arrow_ids) {
        if (arrow_ids.empty()) throw std::invalid_argument("Path: empty word");
        Path p;
        p.word_ = std::move(arrow_ids);
        return p;
    }

    bool is_trivial() const { return word_.empty(); }
    long trivial_vertex() const { return vertex_; }
    long length() const { return static_cast<long>(word_.size()); }
    const std::vector<int>& arrows() const { return word_; }

    friend bool operator<(const Path& a, const Path& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        if (a.is_trivial()) return a.vertex_ < b.vertex_;
        return a.word_ < b.word_;
    }
    friend bool operator==(const Path& a, const Path& b) {
        return a.vertex_ == b.vertex_ && a.word_ == b.word_;
    }
    friend bool operator!=(const Path& a, const Path& b) { return !(a == b); }

   private:
    long vertex_ = -1;
    std::vector<int> word_;
};

/// Directed multigraph with named arrows. Arrow ids are assigned in
/// lexicographic name order, so path words compare in name order too.
/// Immutable after construction.
class Quiver {
   public:
    static std::shared_ptr<const Quiver> create(std::vector<std::string> vertex_labels,
                                                std::vector<Arrow> arrows) {
        auto q = std::shared_ptr<Quiver>(new Quiver());
        q->vertex_labels_ = std::move(vertex_labels);
        std::sort(arrows.begin(), arrows.end(),
                  [](const Arrow& a, const Arrow& b) { return a.name < b.name; });
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            const Arrow& a = arrows[i];
            if (a.tail < 0 || a.tail >= q->vertex_count() || a.head < 0 ||
                a.head >= q->vertex_count())
                throw std::invalid_argument("Quiver: arrow '" + a.name + "' has bad endpoints");
            if (i > 0 && arrows[i - 1].name == a.name)
                throw std::invalid_argument("Quiver: duplicate arrow name '" + a.name + "'");
            q->arrow_index_[a.name] = static_cast<int>(i);
        }
        q->arrows_ = std::move(arrows);
        return q;
    }

    long vertex_count() const { return static_cast<long>(vertex_labels_.size()); }
    long arrow_count() const { return static_cast<long>(arrows_.size()); }
    const std::vector<std::string>& vertex_labels() const { return vertex_labels_; }
    const Arrow& arrow(int id) const { return arrows_.at(id); }
    const std::vector<Arrow>& arrows() const { return arrows_; }

    std::optional<int> arrow_id(const std::string& name) const {
        auto it = arrow_index_.find(name);
        if (it == arrow_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<long> vertex_id(const std::string& label) const {
        for (long i = 0; i < vertex_count(); ++i)
            if (vertex_labels_[i] == label) return i;
        return std::nullopt;
    }

    long head(const Path& p) const {
        return p.is_trivial() ? p.trivial_vertex() : arrows_[p.arrows().front()].head;
    }
    long tail(const Path& p) const {
        return p.is_trivial() ? p.trivial_vertex() : arrows_[p.arrows().back()].tail;
    }
    bool is_closed(const Path& p) const { return head(p) == tail(p); }

    bool is_valid(const Path& p) const {
        if (p.is_trivial()) return p.trivial_vertex() >= 0 && p.trivial_vertex() < vertex_count();
        const auto& w = p.arrows();
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] < 0 || w[i] >= arrow_count()) return false;
            if (i + 1 < w.size() && arrows_[w[i + 1]].head != arrows_[w[i]].tail) return false;
        }
        return true;
    }

    /// Concatenation p.q, defined when h(q) = t(p); nullopt encodes the zero
    /// product. Trivial paths act as the units e_{h(p)} p = p = p e_{t(p)}.
    std::optional<Path> compose(const Path& p, const Path& q) const {
        if (head(q) != tail(p)) return std::nullopt;
        if (p.is_trivial()) return q;
        if (q.is_trivial()) return p;
        std::vector<int> w = p.arrows();
        w.insert(w.end(), q.arrows().begin(), q.arrows().end());
        return Path::word(std::move(w));
    }

    /// Left stripping: returns t with p = q t, if it exists. delta_{e_v} keeps
    /// paths with head v.
    std::optional<Path> strip_prefix(const Path& p, const Path& q) const {
        if (q.is_trivial()) return head(p) == q.trivial_vertex() ? std::optional<Path>(p) : std::nullopt;
        if (p.length() < q.length()) return std::nullopt;
        const auto& pw = p.arrows();
        const auto& qw = q.arrows();
        if (!std::equal(qw.begin(), qw.end(), pw.begin())) return std::nullopt;
        if (p.length() == q.length()) return Path::trivial(tail(q));
        return Path::word(std::vector<int>(pw.begin() + qw.size(), pw.end()));
    }

    /// Right stripping: returns t with p = t q, if it exists.
    std::optional<Path> strip_suffix(const Path& p, const Path& q) const {
        if (q.is_trivial()) return tail(p) == q.trivial_vertex() ? std::optional<Path>(p) : std::nullopt;
        if (p.length() < q.length()) return std::nullopt;
        const auto& pw = p.arrows();
        const auto& qw = q.arrows();
        if (!std::equal(qw.rbegin(), qw.rend(), pw.rbegin())) return std::nullopt;
        if (p.length() == q.length()) return Path::trivial(head(q));
        return Path::word(std::vector<int>(pw.begin(), pw.end() - qw.size()));
    }

    /// One-step cyclic rotation of a closed path: aq -> qa (head arrow moved to
    /// the tail side). Nullopt when the rotation is not composable.
    std::optional<Path> rotate(const Path& p) const {
        if (p.length() <= 1) return p;
        std::vector<int> w(p.arrows().begin() + 1, p.arrows().end());
        w.push_back(p.arrows().front());
        Path r = Path::word(std::move(w));
        return is_valid(r) ? std::optional<Path>(r) : std::nullopt;
    }

    std::string path_to_string(const Path& p) const {
        if (p.is_trivial()) return "e(" + vertex_labels_[p.trivial_vertex()] + ")";
        std::string s;
        for (std::size_t i = 0; i < p.arrows().size(); ++i) {
            if (i) s += ".";
            s += arrows_[p.arrows()[i]].name;
        }
        return s;
    }

   private:
    Quiver() = default;
    std::vector<std::string> vertex_labels_;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> arrow_index_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

/// All paths of exact length n, optionally filtered by endpoints, in
/// lexicographic arrow-name order.
inline std::vector<Path> enumerate_paths(const QuiverPtr& q, long n,
                                         std::optional<long> from = std::nullopt,
                                         std::optional<long> to = std::nullopt) {
    if (n < 0) throw std::invalid_argument("enumerate_paths: negative length");
    std::vector<Path> out;
    if (n == 0) {
        for (long v = 0; v < q->vertex_count(); ++v) {
            if (from && *from != v) continue;
            if (to && *to != v) continue;
            out.push_back(Path::trivial(v));
        }
        return out;
    }
    std::vector<int> word;
    auto rec = [&](auto&& self, long remaining, long tail_so_far) -> void {
        if (remaining == 0) {
            if (!from || *from == tail_so_far) out.push_back(Path::word(word));
            return;
        }
        for (int a = 0; a < q->arrow_count(); ++a) {
            const Arrow& ar = q->arrow(a);
            if (word.empty()) {
                if (to && ar.head != *to) continue;
            } else if (ar.head != tail_so_far) {
                continue;
            }
            word.push_back(a);
            self(self, remaining - 1, ar.tail);
            word.pop_back();
        }
    };
    rec(rec, n, -1);
    return out;
}

/// Sparse element of the path algebra: path -> coefficient, no stored zeros.
class PathAlgebraElement {
   public:
    explicit PathAlgebraElement(QuiverPtr quiver) : quiver_(std::move(quiver)) {}

    const QuiverPtr& quiver() const { return quiver_; }
    const std::map<Path, Cyclotomic>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Cyclotomic coeff(const Path& p) const {
        auto it = terms_.find(p);
        return it == terms_.end() ? Cyclotomic() : it->second;
    }

    void add_term(const Path& p, const Cyclotomic& c) {
        if (c.is_zero()) return;
        if (!quiver_->is_valid(p))
            throw std::invalid_argument("PathAlgebraElement: invalid path for this quiver");
        auto it = terms_.find(p);
        if (it == terms_.end()) {
            terms_.emplace(p, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    PathAlgebraElement operator-() const {
        PathAlgebraElement r(quiver_);
        for (const auto& [p, c] : terms_) r.terms_.emplace(p, -c);
        return r;
    }
    friend PathAlgebraElement operator+(const PathAlgebraElement& a, const PathAlgebraElement& b) {
        a.require_same_quiver(b);
        PathAlgebraElement r = a;
        for (const auto& [p, c] : b.terms_) r.add_term(p, c);
        return r;
    }
    friend PathAlgebraElement operator-(const PathAlgebraElement& a, const PathAlgebraElement& b) {
        return a + (-b);
    }
    PathAlgebraElement scaled(const Cyclotomic& s) const {
        PathAlgebraElement r(quiver_);
        if (s.is_zero()) return r;
        for (const auto& [p, c] : terms_) r.terms_.emplace(p, s * c);
        return r;
    }

    /// Bilinear extension of path concatenation; incomposable products vanish.
    friend PathAlgebraElement operator*(const PathAlgebraElement& a, const PathAlgebraElement& b) {
        a.require_same_quiver(b);
        PathAlgebraElement r(a.quiver_);
        for (const auto& [p, cp] : a.terms_)
            for (const auto& [q, cq] : b.terms_) {
                auto pq = a.quiver_->compose(p, q);
                if (pq) r.add_term(*pq, cp * cq);
            }
        return r;
    }

    friend bool operator==(const PathAlgebraElement& a, const PathAlgebraElement& b) {
        if (a.quiver_ != b.quiver_ || a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib)
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        return true;
    }
    friend bool operator!=(const PathAlgebraElement& a, const PathAlgebraElement& b) {
        return !(a == b);
    }

    /// Restriction to paths of length n.
    PathAlgebraElement homogeneous_part(long n) const {
        PathAlgebraElement r(quiver_);
        for (const auto& [p, c] : terms_)
            if (p.length() == n) r.terms_.emplace(p, c);
        return r;
    }

    std::vector<long> degrees() const {
        std::vector<long> d;
        for (const auto& [p, c] : terms_)
            if (d.empty() || d.back() != p.length()) d.push_back(p.length());
        return d;
    }
    long top_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.length(); }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [p, c] : terms_) {
            std::string cs = c.to_string();
            bool neg = cs.size() > 1 && cs[0] == '-' && cs.find(' ') == std::string::npos;
            bool composite = cs.find(' ') != std::string::npos;
            std::string mag = neg ? cs.substr(1) : cs;
            if (first) {
                out += neg ? "-" : "";
            } else {
                out += neg ? " - " : " + ";
            }
            first = false;
            if (composite)
                out += "(" + cs + ") * " + quiver_->path_to_string(p);
            else if (mag == "1")
                out += quiver_->path_to_string(p);
            else
                out += mag + " * " + quiver_->path_to_string(p);
        }
        return out;
    }

   private:
    void require_same_quiver(const PathAlgebraElement& o) const {
        if (quiver_ != o.quiver_)
            throw std::invalid_argument("PathAlgebraElement: mixed quivers");
    }

    QuiverPtr quiver_;
    std::map<Path, Cyclotomic> terms_;
};

inline PathAlgebraElement monomial(const QuiverPtr& q, const Path& p,
                                   const Cyclotomic& c = Cyclotomic(Rational(1))) {
    PathAlgebraElement e(q);
    e.add_term(p, c);
    return e;
}

/// delta_q x: strips q from the head side of every monomial.
inline PathAlgebraElement left_derivative(const Path& q, const PathAlgebraElement& x) {
    PathAlgebraElement r(x.quiver());
    for (const auto& [p, c] : x.terms()) {
        auto t = x.quiver()->strip_prefix(p, q);
        if (t) r.add_term(*t, c);
    }
    return r;
}

/// x delta'_q: strips q from the tail side of every monomial.
inline PathAlgebraElement right_derivative(const PathAlgebraElement& x, const Path& q) {
    PathAlgebraElement r(x.quiver());
    for (const auto& [p, c] : x.terms()) {
        auto t = x.quiver()->strip_suffix(p, q);
        if (t) r.add_term(*t, c);
    }
    return r;
}

/// Coordinate chart on the span of all paths of one fixed length.
struct PathBasis {
    QuiverPtr quiver;
    std::vector<Path> paths;
    std::map<Path, long> index;

    static PathBasis of_length(const QuiverPtr& q, long n) {
        PathBasis b;
        b.quiver = q;
        b.paths = enumerate_paths(q, n);
        for (std::size_t i = 0; i < b.paths.size(); ++i)
            b.index.emplace(b.paths[i], static_cast<long>(i));
        return b;
    }

    long size() const { return static_cast<long>(paths.size()); }

    SparseVector coords(const PathAlgebraElement& x) const {
        SparseVector v;
        for (const auto& [p, c] : x.terms()) {
            auto it = index.find(p);
            if (it == index.end())
                throw std::invalid_argument("PathBasis: element has support outside the basis");
            v.emplace(it->second, c);
        }
        return v;
    }

    PathAlgebraElement element(const SparseVector& v) const {
        PathAlgebraElement x(quiver);
        for (const auto& [i, c] : v) x.add_term(paths.at(i), c);
        return x;
    }
};

}  // namespace spforge

#endif  // SPFORGE_QUIVER_HPP
