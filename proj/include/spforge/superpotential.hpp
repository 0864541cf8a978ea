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

#ifndef SPFORGE_SUPERPOTENTIAL_HPP
#define SPFORGE_SUPERPOTENTIAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "spforge/quiver.hpp"

namespace spforge {

/// Graded automorphism data: compatible permutations of vertices and arrows,
/// sigma(h(a)) = h(sigma(a)) and sigma(t(a)) = t(sigma(a)).
struct Twist {
    std::vector<long> vertex_map;
    std::vector<int> arrow_map;

    static Twist identity(const QuiverPtr& q) {
        Twist t;
        t.vertex_map.resize(q->vertex_count());
        for (long v = 0; v < q->vertex_count(); ++v) t.vertex_map[v] = v;
        t.arrow_map.resize(q->arrow_count());
        for (int a = 0; a < q->arrow_count(); ++a) t.arrow_map[a] = a;
        return t;
    }

    void validate(const QuiverPtr& q) const {
        if (static_cast<long>(vertex_map.size()) != q->vertex_count() ||
            static_cast<long>(arrow_map.size()) != q->arrow_count())
            throw std::invalid_argument("Twist: size mismatch with quiver");
        std::vector<bool> seen_v(vertex_map.size(), false), seen_a(arrow_map.size(), false);
        for (long m : vertex_map) {
            if (m < 0 || m >= q->vertex_count() || seen_v[m])
                throw std::invalid_argument("Twist: vertex map is not a permutation");
            seen_v[m] = true;
        }
        for (std::size_t a = 0; a < arrow_map.size(); ++a) {
            int m = arrow_map[a];
            if (m < 0 || m >= q->arrow_count() || seen_a[m])
                throw std::invalid_argument("Twist: arrow map is not a bijection");
            seen_a[m] = true;
            const Arrow& src = q->arrow(static_cast<int>(a));
            const Arrow& dst = q->arrow(m);
            if (vertex_map[src.head] != dst.head || vertex_map[src.tail] != dst.tail)
                throw std::invalid_argument("Twist: arrow '" + src.name +
                                            "' image breaks endpoint compatibility");
        }
    }

    int inverse_arrow(int a) const {
        for (std::size_t i = 0; i < arrow_map.size(); ++i)
            if (arrow_map[i] == a) return static_cast<int>(i);
        throw std::logic_error("Twist: arrow not in bijection image");
    }

    bool is_identity() const {
        for (std::size_t v = 0; v < vertex_map.size(); ++v)
            if (vertex_map[v] != static_cast<long>(v)) return false;
        for (std::size_t a = 0; a < arrow_map.size(); ++a)
            if (arrow_map[a] != static_cast<int>(a)) return false;
        return true;
    }
};

/// Outcome of the (twisted) n-superpotential condition check. Invalid input
/// produces a failing report with a witness, not a fault.
struct ConditionReport {
    bool pass = true;
    /// First violated coefficient equation: c_{aq} vs (-1)^(n-1) c_{qa}.
    std::optional<std::pair<Path, Path>> witness;  // (a, q)
    /// Monomials off the allowed support: non-closed (untwisted) or
    /// h(p) != sigma(t(p)) (twisted).
    std::vector<Path> support_violations;
    std::string message;
};

namespace detail {

inline Cyclotomic condition_sign(long n) {
    return (n - 1) % 2 == 0 ? Cyclotomic(Rational(1)) : Cyclotomic(Rational(-1));
}

}  // namespace detail

/// Checks that every homogeneous part of x satisfies the degree-n
/// superpotential condition c_{aq} = (-1)^(n-1) c_{qa}, twisted variant
/// c_{sigma(a)q} = (-1)^(n-1) c_{qa}.
inline ConditionReport check_condition(const PathAlgebraElement& x, long n,
                                       const std::optional<Twist>& twist = std::nullopt) {
    if (n < 1) throw std::invalid_argument("check_condition: degree must be >= 1");
    const QuiverPtr& q = x.quiver();
    if (twist) twist->validate(q);
    ConditionReport rep;
    Cyclotomic sign = detail::condition_sign(n);
    for (const auto& [s, c] : x.terms()) {
        long head = q->head(s);
        long tail = q->tail(s);
        long expected_head = twist ? twist->vertex_map[tail] : tail;
        if (head != expected_head) {
            rep.pass = false;
            rep.support_violations.push_back(s);
            continue;
        }
        if (s.length() == 0) continue;  // any element of S satisfies the condition
        int head_arrow = s.arrows().front();
        int a = twist ? twist->inverse_arrow(head_arrow) : head_arrow;
        auto rest = q->strip_prefix(s, Path::word({head_arrow}));
        auto partner = q->compose(*rest, Path::word({a}));
        Cyclotomic partner_coeff = partner ? x.coeff(*partner) : Cyclotomic();
        if (!(c == sign * partner_coeff)) {
            rep.pass = false;
            if (!rep.witness) rep.witness = {Path::word({a}), *rest};
        }
    }
    if (!rep.pass) {
        rep.message = "superpotential condition violated";
        if (rep.witness)
            rep.message += " at pair (a=" + q->path_to_string(rep.witness->first) +
                           ", q=" + q->path_to_string(rep.witness->second) + ")";
        if (!rep.support_violations.empty())
            rep.message += "; " + std::to_string(rep.support_violations.size()) +
                           " support violation(s), first " +
                           q->path_to_string(rep.support_violations.front());
    }
    return rep;
}

/// Sum over cyclic rotations of each seed monomial with sign
/// (-1)^((n-1) * rotation); coincident rotations are summed, not deduplicated.
inline PathAlgebraElement cyclic_symmetrize(const PathAlgebraElement& seed, long n) {
    const QuiverPtr& q = seed.quiver();
    PathAlgebraElement out(q);
    Cyclotomic sign = detail::condition_sign(n);
    for (const auto& [s, c] : seed.terms()) {
        if (s.length() != n || !q->is_closed(s))
            throw std::invalid_argument("cyclic_symmetrize: seed monomial '" +
                                        q->path_to_string(s) + "' is not a closed path of length " +
                                        std::to_string(n));
        Path cur = s;
        Cyclotomic coeff = c;
        for (long r = 0; r < n; ++r) {
            out.add_term(cur, coeff);
            auto rot = q->rotate(cur);
            if (!rot) throw std::logic_error("cyclic_symmetrize: closed path failed to rotate");
            cur = *rot;
            coeff = coeff * sign;
        }
    }
    return out;
}

enum class SuperpotentialKind { homogeneous, inhomogeneous };

/// Validated (in)homogeneous, optionally twisted superpotential of degree n.
class Superpotential {
   public:
    static Superpotential make(PathAlgebraElement element, long degree,
                               std::optional<Twist> twist = std::nullopt) {
        if (degree < 1) throw std::invalid_argument("Superpotential: degree must be >= 1");
        if (element.homogeneous_part(degree).is_zero())
            throw std::invalid_argument("Superpotential: degree-" + std::to_string(degree) +
                                        " part is zero");
        if (element.top_degree() > degree)
            throw std::invalid_argument("Superpotential: support above the stated degree");
        ConditionReport rep = check_condition(element, degree, twist);
        if (!rep.pass) throw std::invalid_argument("Superpotential: " + rep.message);
        Superpotential sp;
        sp.degree_ = degree;
        sp.twist_ = std::move(twist);
        sp.kind_ = element == element.homogeneous_part(degree) ? SuperpotentialKind::homogeneous
                                                               : SuperpotentialKind::inhomogeneous;
        sp.element_ = std::make_shared<PathAlgebraElement>(std::move(element));
        return sp;
    }

    const PathAlgebraElement& element() const { return *element_; }
    long degree() const { return degree_; }
    const std::optional<Twist>& twist() const { return twist_; }
    SuperpotentialKind kind() const { return kind_; }
    const QuiverPtr& quiver() const { return element_->quiver(); }

    PathAlgebraElement top_part() const { return element_->homogeneous_part(degree_); }
    PathAlgebraElement lower_part(long m) const { return element_->homogeneous_part(m); }

   private:
    Superpotential() = default;
    std::shared_ptr<PathAlgebraElement> element_;
    long degree_ = 0;
    std::optional<Twist> twist_;
    SuperpotentialKind kind_ = SuperpotentialKind::homogeneous;
};

/// The generators delta_p Phi for |p| = k. Zero images are first-class data;
/// they matter for coherence.
struct RelationGenerators {
    long k = 0;
    std::vector<Path> paths;  // all length-k paths, lexicographic order
    std::vector<PathAlgebraElement> images;
    std::vector<std::size_t> zero_indices;

    std::vector<std::pair<Path, PathAlgebraElement>> nonzero() const {
        std::vector<std::pair<Path, PathAlgebraElement>> out;
        for (std::size_t i = 0; i < paths.size(); ++i)
            if (!images[i].is_zero()) out.emplace_back(paths[i], images[i]);
        return out;
    }
};

inline RelationGenerators relation_generators(const Superpotential& sp, long k) {
    if (k < 0 || k > sp.degree())
        throw std::invalid_argument("relation_generators: k out of range");
    RelationGenerators out;
    out.k = k;
    out.paths = enumerate_paths(sp.quiver(), k);
    for (const Path& p : out.paths) {
        PathAlgebraElement img = left_derivative(p, sp.element());
        if (img.is_zero()) out.zero_indices.push_back(out.images.size());
        out.images.push_back(std::move(img));
    }
    return out;
}

/// W_j = span{ delta_p Phi_n : |p| = n-j } echelonized inside the coordinate
/// space of length-j paths (the top part of Phi is differentiated).
inline Subspace relation_space(const Superpotential& sp, long j, const PathBasis& basis) {
    if (j < 0 || j > sp.degree())
        throw std::invalid_argument("relation_space: degree out of range");
    PathAlgebraElement top = sp.top_part();
    std::vector<SparseVector> vecs;
    for (const Path& p : enumerate_paths(sp.quiver(), sp.degree() - j)) {
        PathAlgebraElement img = left_derivative(p, top);
        if (!img.is_zero()) vecs.push_back(basis.coords(img));
    }
    return Subspace::from_vectors(basis.size(), vecs);
}

inline Subspace relation_space(const Superpotential& sp, long j) {
    return relation_space(sp, j, PathBasis::of_length(sp.quiver(), j));
}

/// Preprojective superpotential sum [a, a*] on a quiver whose arrow counts are
/// symmetric between every ordered vertex pair (loops paired in halves).
inline Superpotential make_preprojective(const QuiverPtr& q) {
    PathAlgebraElement phi(q);
    auto arrows_between = [&](long u, long v) {
        std::vector<int> ids;
        for (int a = 0; a < q->arrow_count(); ++a)
            if (q->arrow(a).tail == u && q->arrow(a).head == v) ids.push_back(a);
        return ids;  // already name-sorted because ids are
    };
    auto add_pair = [&](int fwd, int bwd) {
        Path f = Path::word({fwd});
        Path b = Path::word({bwd});
        phi.add_term(*q->compose(f, b), Cyclotomic(Rational(1)));
        phi.add_term(*q->compose(b, f), Cyclotomic(Rational(-1)));
    };
    for (long u = 0; u < q->vertex_count(); ++u) {
        auto loops = arrows_between(u, u);
        if (loops.size() % 2 != 0)
            throw std::invalid_argument("make_preprojective: odd loop count at a vertex");
        for (std::size_t i = 0; i < loops.size() / 2; ++i)
            add_pair(loops[i], loops[i + loops.size() / 2]);
        for (long v = u + 1; v < q->vertex_count(); ++v) {
            auto fwd = arrows_between(u, v);
            auto bwd = arrows_between(v, u);
            if (fwd.size() != bwd.size())
                throw std::invalid_argument("make_preprojective: asymmetric arrow counts");
            for (std::size_t i = 0; i < fwd.size(); ++i) add_pair(fwd[i], bwd[i]);
        }
    }
    return Superpotential::make(std::move(phi), 2);
}

}  // namespace spforge

#endif  // SPFORGE_SUPERPOTENTIAL_HPP
