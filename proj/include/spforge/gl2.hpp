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

#ifndef SPFORGE_GL2_HPP
#define SPFORGE_GL2_HPP

#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "spforge/groups.hpp"
#include "spforge/superpotential.hpp"

namespace spforge {

/// BFS shortest directed path length; nullopt encodes infinity.
inline std::optional<long> vertex_distance(const QuiverPtr& q, long from, long to) {
    if (from < 0 || from >= q->vertex_count() || to < 0 || to >= q->vertex_count())
        throw std::invalid_argument("vertex_distance: vertex out of range");
    std::vector<long> dist(q->vertex_count(), -1);
    dist[from] = 0;
    std::deque<long> queue{from};
    while (!queue.empty()) {
        long v = queue.front();
        queue.pop_front();
        if (v == to) return dist[v];
        for (int a = 0; a < q->arrow_count(); ++a) {
            const Arrow& ar = q->arrow(a);
            if (ar.tail != v || dist[ar.head] >= 0) continue;
            dist[ar.head] = dist[v] + 1;
            queue.push_back(ar.head);
        }
    }
    return std::nullopt;
}

struct RelationEntry {
    std::string label;  // generator path
    long tail = -1;     // tail vertex of the relation element
    long head = -1;
    std::optional<long> distance;  // shortest tail -> head path length
};

/// Head/tail data of the relation generators plus the exact dimension of each
/// vertex-pair block e R f (head e, tail f).
struct RelationProfile {
    std::vector<RelationEntry> relations;
    std::vector<std::vector<long>> block_dim;  // [head][tail]
};

/// Exact profile from the relation space of a (possibly twisted)
/// superpotential, differentiated by paths of length k.
inline RelationProfile profile_from_superpotential(const Superpotential& sp, long k) {
    const QuiverPtr& q = sp.quiver();
    long big_n = sp.degree() - k;
    PathBasis bn = PathBasis::of_length(q, big_n);
    PathAlgebraElement top = sp.top_part();
    long vc = q->vertex_count();
    RelationProfile prof;
    prof.block_dim.assign(vc, std::vector<long>(vc, 0));
    std::vector<std::vector<std::vector<SparseVector>>> per_block(
        vc, std::vector<std::vector<SparseVector>>(vc));
    for (const Path& p : enumerate_paths(q, k)) {
        PathAlgebraElement img = left_derivative(p, top);
        if (img.is_zero()) continue;
        long head = q->head(img.terms().begin()->first);
        long tail = q->tail(img.terms().begin()->first);
        for (const auto& [s, c] : img.terms()) {
            (void)c;
            if (q->head(s) != head || q->tail(s) != tail)
                throw std::logic_error("profile: relation generator spans several blocks");
        }
        RelationEntry entry;
        entry.label = q->path_to_string(p);
        entry.head = head;
        entry.tail = tail;
        entry.distance = vertex_distance(q, tail, head);
        prof.relations.push_back(entry);
        per_block[head][tail].push_back(bn.coords(img));
    }
    for (long e = 0; e < vc; ++e)
        for (long f = 0; f < vc; ++f)
            if (!per_block[e][f].empty())
                prof.block_dim[e][f] = Subspace::from_vectors(bn.size(), per_block[e][f]).dim();
    return prof;
}

/// Structural profile for the twisted k = 0 skew-group case: one relation per
/// vertex v, living in the block (v, twist^-1(v)); the relation is nonzero
/// exactly when a length-2 path exists there. Anchored by the D8-in-GL2
/// example, where only the central relation is a loop.
inline RelationProfile profile_from_mckay(const McKayQuiver& mk) {
    const QuiverPtr& q = mk.quiver;
    long vc = q->vertex_count();
    std::vector<long> twist_inv(vc);
    for (long v = 0; v < vc; ++v) twist_inv[mk.twist[v]] = v;
    RelationProfile prof;
    prof.block_dim.assign(vc, std::vector<long>(vc, 0));
    for (long v = 0; v < vc; ++v) {
        long src = twist_inv[v];
        if (enumerate_paths(q, 2, src, v).empty()) continue;
        RelationEntry entry;
        entry.label = "e(" + q->vertex_labels()[v] + ")";
        entry.head = v;
        entry.tail = src;
        entry.distance = vertex_distance(q, src, v);
        prof.relations.push_back(entry);
        prof.block_dim[v][src] = 1;
    }
    return prof;
}

struct HomDimensions {
    long hom_v = 0;  // dim Hom_{S^e}(R, V)
    long hom_s = 0;  // dim Hom_{S^e}(R, S)
    bool no_nontrivial_deformations() const { return hom_v == 0 && hom_s == 0; }
};

/// S^e-module maps preserve heads and tails: Hom(R,V) counts arrows parallel
/// to each relation block, Hom(R,S) the diagonal blocks.
inline HomDimensions hom_dimensions(const RelationProfile& prof, const QuiverPtr& q) {
    HomDimensions out;
    long vc = q->vertex_count();
    for (long e = 0; e < vc; ++e)
        for (long f = 0; f < vc; ++f) {
            long d = prof.block_dim[e][f];
            if (d == 0) continue;
            long arrows = 0;
            for (int a = 0; a < q->arrow_count(); ++a)
                if (q->arrow(a).tail == f && q->arrow(a).head == e) ++arrows;
            out.hom_v += d * arrows;
            if (e == f) out.hom_s += d;
        }
    return out;
}

struct TwistDistanceReport {
    bool pass = true;
    std::vector<std::pair<long, long>> violations;  // (vertex, twist image)
};

/// True iff every vertex is at directed distance >= 2 from its det-twist
/// image.
inline TwistDistanceReport check_twist_distance(const McKayQuiver& mk) {
    TwistDistanceReport rep;
    for (long v = 0; v < mk.quiver->vertex_count(); ++v) {
        auto d = vertex_distance(mk.quiver, v, mk.twist[v]);
        if (d && *d < 2) {
            rep.pass = false;
            rep.violations.emplace_back(v, mk.twist[v]);
        }
    }
    return rep;
}

}  // namespace spforge

#endif  // SPFORGE_GL2_HPP
