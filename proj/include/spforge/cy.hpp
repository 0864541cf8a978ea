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

#ifndef SPFORGE_CY_HPP
#define SPFORGE_CY_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "spforge/pbw.hpp"

namespace spforge {

/// eps_i = (-1)^(i(n-i)) for i < (n+1)/2, else +1.
inline std::vector<long> epsilon_table(long n) {
    std::vector<long> eps(n + 1, 1);
    for (long i = 1; i <= n; ++i)
        if (2 * i < n + 1) eps[i] = ((i * (n - i)) % 2 == 0) ? 1 : -1;
    return eps;
}

/// One summand of a differential image: left (x) basis[target] (x) right,
/// where left and right are trivial paths or single arrows.
struct DifferentialQuadruple {
    Path left;
    std::size_t target = 0;
    Path right;
    Cyclotomic coeff;
};

/// The bimodule complex W*_A for k = n-2: bases of the W_i from the top part
/// of Phi', differentials on generators, and the sign table.
class ComplexPresentation {
   public:
    struct Level {
        PathBasis coords;                      // length-i path coordinates
        std::vector<Path> generator_paths;     // |p| = n - i
        std::vector<SparseVector> generators;  // delta_p Phi_n
        Subspace basis{0};
        SparseMatrix basis_matrix{0, 0};       // columns = basis vectors
        SparseMatrix generator_matrix{0, 0};   // columns = generators
        std::vector<SparseVector> gen_in_basis;
        std::vector<SparseVector> basis_in_gens;
    };

    Superpotential phi;
    long degree = 0;
    std::vector<long> epsilon;
    std::vector<Level> level;                                     // index 0..n
    std::vector<std::vector<std::vector<DifferentialQuadruple>>> diff;  // diff[i][gen]

    ComplexPresentation() : phi(dummy()) {}

   private:
    static Superpotential dummy() {
        auto q = Quiver::create({"0"}, {{"x", 0, 0}});
        PathAlgebraElement e(q);
        e.add_term(Path::word({0}), Cyclotomic(Rational(1)));
        return Superpotential::make(e, 1);
    }
};

/// Builds W*_A from a validated superpotential with homogeneous parts n and
/// n-2 only (the theta_1 = 0 case).
inline ComplexPresentation build_complex(const Superpotential& phi_prime) {
    const QuiverPtr& q = phi_prime.quiver();
    long n = phi_prime.degree();
    for (long m = 0; m < n; ++m)
        if (m != n - 2 && !phi_prime.lower_part(m).is_zero())
            throw std::invalid_argument(
                "build_complex: superpotential has a homogeneous part of degree " +
                std::to_string(m) + "; only degrees n and n-2 are supported");

    ComplexPresentation c;
    c.phi = phi_prime;
    c.degree = n;
    c.epsilon = epsilon_table(n);
    PathAlgebraElement top = phi_prime.top_part();

    c.level.resize(n + 1);
    for (long i = 0; i <= n; ++i) {
        auto& lv = c.level[i];
        lv.coords = PathBasis::of_length(q, i);
        lv.generator_paths = enumerate_paths(q, n - i);
        for (const Path& p : lv.generator_paths)
            lv.generators.push_back(lv.coords.coords(left_derivative(p, top)));
        lv.basis = Subspace::from_vectors(lv.coords.size(), lv.generators);
        lv.basis_matrix = SparseMatrix::from_columns(lv.coords.size(), lv.basis.basis());
        lv.generator_matrix = SparseMatrix::from_columns(lv.coords.size(), lv.generators);
        for (const auto& g : lv.generators) {
            auto pres = solve(lv.basis_matrix, g);
            if (!pres) throw std::logic_error("build_complex: generator escapes its own span");
            lv.gen_in_basis.push_back(std::move(*pres));
        }
        for (const auto& b : lv.basis.basis()) {
            auto pres = solve(lv.generator_matrix, b);
            if (!pres) throw std::logic_error("build_complex: basis escapes the generators");
            lv.basis_in_gens.push_back(std::move(*pres));
        }
    }

    // d_i = eps_i (d_i^l + (-1)^i d_i^r) on generators, targets in the basis
    // of W_{i-1}; left/right words are single arrows.
    c.diff.resize(n + 1);
    for (long i = 1; i <= n; ++i) {
        auto& lv = c.level[i];
        auto& prev = c.level[i - 1];
        Cyclotomic eps(Rational(c.epsilon[i]));
        Cyclotomic eps_r = eps * Cyclotomic(Rational(i % 2 == 0 ? 1 : -1));
        c.diff[i].resize(lv.generator_paths.size());
        for (std::size_t g = 0; g < lv.generator_paths.size(); ++g) {
            const Path& p = lv.generator_paths[g];
            for (int a = 0; a < q->arrow_count(); ++a) {
                Path ap = Path::word({a});
                auto pa = q->compose(p, ap);
                if (pa) {
                    // left term: a (x) delta_{pa} Phi (x) e_{h(p)}
                    auto it = std::lower_bound(prev.generator_paths.begin(),
                                               prev.generator_paths.end(), *pa);
                    if (it == prev.generator_paths.end() || *it != *pa)
                        throw std::logic_error("build_complex: missing generator path");
                    std::size_t gi = it - prev.generator_paths.begin();
                    for (const auto& [m, mu] : prev.gen_in_basis[gi]) {
                        DifferentialQuadruple quad;
                        quad.left = ap;
                        quad.target = m;
                        quad.right = Path::trivial(q->head(p));
                        quad.coeff = eps * mu;
                        c.diff[i][g].push_back(std::move(quad));
                    }
                }
                // right term: e_{t(p)} (x) delta_p Phi delta'_a (x) a
                PathAlgebraElement right_img =
                    right_derivative(lv.coords.element(lv.generators[g]), ap);
                if (!right_img.is_zero()) {
                    auto pres = solve(prev.basis_matrix, prev.coords.coords(right_img));
                    if (!pres)
                        throw std::logic_error("build_complex: right derivative escapes W");
                    for (const auto& [m, mu] : *pres) {
                        DifferentialQuadruple quad;
                        quad.left = Path::trivial(q->tail(p));
                        quad.target = m;
                        quad.right = ap;
                        quad.coeff = eps_r * mu;
                        c.diff[i][g].push_back(std::move(quad));
                    }
                }
            }
        }
    }
    return c;
}

struct VerificationReport {
    bool pass = true;
    std::vector<std::string> residuals;
};

/// Composes d_{j-1} o d_j symbolically in free-word coordinates, rewrites each
/// full occurrence of delta_t Phi_n (|t| = n-2) to -delta_t phi_{n-2}, and
/// requires the scalar residuals to vanish for every j = 2..n.
inline VerificationReport verify_d_squared(const ComplexPresentation& c) {
    const Superpotential& phi_prime = c.phi;
    const QuiverPtr& q = phi_prime.quiver();
    long n = c.degree;
    VerificationReport rep;
    PathAlgebraElement phi_low = phi_prime.lower_part(n - 2);

    // The rewrite delta_t Phi_n -> -delta_t phi_{n-2} is well-defined exactly
    // when the superpotential is (n-2)-coherent; refuse to certify otherwise.
    if (!phi_low.is_zero()) {
        CoherenceReport coh = check_coherence(phi_prime, n - 2);
        if (!coh.pass) {
            rep.pass = false;
            rep.residuals.push_back("rewrite ill-defined: " + coh.message);
            return rep;
        }
    }

    const auto& relations = c.level[2];  // W_2 = R

    for (long j = 2; j <= n; ++j) {
        const auto& lv = c.level[j];
        const auto& mid = c.level[j - 1];
        const auto& out = c.level[j - 2];
        for (std::size_t g = 0; g < lv.generator_paths.size(); ++g) {
            // Accumulate the composite as (left word, out-basis index, right word).
            std::map<std::tuple<Path, std::size_t, Path>, Cyclotomic> acc;
            for (const auto& q1 : c.diff[j][g]) {
                // Middle basis vector expressed in generators of W_{j-1}.
                const SparseVector& nu = mid.basis_in_gens[q1.target];
                for (const auto& [g2, nu_c] : nu) {
                    for (const auto& q2 : c.diff[j - 1][g2]) {
                        auto left = q->compose(q1.left, q2.left);
                        auto right = q->compose(q2.right, q1.right);
                        if (!left || !right) continue;
                        Cyclotomic val = q1.coeff * nu_c * q2.coeff;
                        auto key = std::make_tuple(*left, q2.target, *right);
                        auto it = acc.find(key);
                        if (it == acc.end())
                            acc.emplace(key, val);
                        else {
                            it->second += val;
                            if (it->second.is_zero()) acc.erase(it);
                        }
                    }
                }
            }
            // Expand middle slots to path coordinates and split by word shape.
            std::map<std::tuple<Path, Path>, PathAlgebraElement> left_groups;   // (q, right)
            std::map<std::tuple<Path, Path>, PathAlgebraElement> right_groups;  // (left, q)
            bool cross_clean = true;
            std::map<std::tuple<Path, Path, Path>, Cyclotomic> cross;
            for (const auto& [key, val] : acc) {
                const auto& [left, target, right] = key;
                for (const auto& [qi, qc] : out.basis.basis()[target]) {
                    const Path& qpath = out.coords.paths[qi];
                    Cyclotomic coeff = val * qc;
                    if (left.length() == 2 && right.length() == 0) {
                        auto& el = left_groups
                                       .emplace(std::make_tuple(qpath, right),
                                                PathAlgebraElement(q))
                                       .first->second;
                        el.add_term(left, coeff);
                    } else if (left.length() == 0 && right.length() == 2) {
                        auto& el = right_groups
                                       .emplace(std::make_tuple(left, qpath),
                                                PathAlgebraElement(q))
                                       .first->second;
                        el.add_term(right, coeff);
                    } else {
                        auto ck = std::make_tuple(left, qpath, right);
                        auto it = cross.find(ck);
                        if (it == cross.end())
                            cross.emplace(ck, coeff);
                        else {
                            it->second += coeff;
                            if (it->second.is_zero()) cross.erase(it);
                        }
                    }
                }
            }
            if (!cross.empty()) cross_clean = false;
            if (!cross_clean) {
                rep.pass = false;
                rep.residuals.push_back("j=" + std::to_string(j) + " generator " +
                                        q->path_to_string(lv.generator_paths[g]) +
                                        ": mixed left/right words fail to cancel");
                continue;
            }
            // Rewrite each degree-2 word group, a full generator occurrence in
            // R, to the scalar -delta_t phi_{n-2} and collect per middle path.
            std::map<Path, Cyclotomic> residual;
            auto rewrite = [&](const PathAlgebraElement& words, const Path& qpath,
                               bool ok) -> bool {
                if (!ok) return false;
                auto mu = solve(relations.generator_matrix, relations.coords.coords(words));
                if (!mu) return false;
                Cyclotomic scalar;
                for (const auto& [t, mu_c] : *mu) {
                    PathAlgebraElement low = left_derivative(relations.generator_paths[t], phi_low);
                    if (!low.is_zero()) scalar += mu_c * (-low.terms().begin()->second);
                }
                if (!scalar.is_zero()) {
                    auto it = residual.find(qpath);
                    if (it == residual.end())
                        residual.emplace(qpath, scalar);
                    else {
                        it->second += scalar;
                        if (it->second.is_zero()) residual.erase(it);
                    }
                }
                return true;
            };
            bool ok = true;
            for (const auto& [key, words] : left_groups)
                ok = rewrite(words, std::get<0>(key), ok);
            for (const auto& [key, words] : right_groups)
                ok = rewrite(words, std::get<1>(key), ok);
            if (!ok) {
                rep.pass = false;
                rep.residuals.push_back("j=" + std::to_string(j) + " generator " +
                                        q->path_to_string(lv.generator_paths[g]) +
                                        ": degree-2 composite leaves the relation space");
                continue;
            }
            for (const auto& [qpath, scalar] : residual) {
                rep.pass = false;
                rep.residuals.push_back("j=" + std::to_string(j) + " generator " +
                                        q->path_to_string(lv.generator_paths[g]) + " at " +
                                        q->path_to_string(qpath) + ": residual " +
                                        scalar.to_string());
            }
        }
    }
    return rep;
}

/// mu o d_1 on each generator of W_1: sum_a (c_{pa} - (-1)^(n-1) c_{ap}) a
/// must vanish identically.
inline VerificationReport verify_augmentation_raw(const QuiverPtr& q,
                                                  const PathAlgebraElement& phi_top, long n) {
    VerificationReport rep;
    Cyclotomic sign = detail::condition_sign(n);
    for (const Path& p : enumerate_paths(q, n - 1)) {
        PathAlgebraElement img(q);
        for (int a = 0; a < q->arrow_count(); ++a) {
            Path ap = Path::word({a});
            Cyclotomic c_pa, c_ap;
            auto pa = q->compose(p, ap);
            if (pa) c_pa = phi_top.coeff(*pa);
            auto apth = q->compose(ap, p);
            if (apth) c_ap = phi_top.coeff(*apth);
            img.add_term(ap, c_pa - sign * c_ap);
        }
        if (!img.is_zero()) {
            rep.pass = false;
            rep.residuals.push_back("generator " + q->path_to_string(p) + ": " + img.to_string());
        }
    }
    return rep;
}

inline VerificationReport verify_augmentation(const ComplexPresentation& c) {
    return verify_augmentation_raw(c.phi.quiver(), c.phi.top_part(), c.degree);
}

struct PairingBlock {
    long row_vertex = 0;  // block e W_j f: generators delta_p Phi with t(p)=e
    long col_vertex = 0;  // h(p)=f; partner block f W_{n-j} e
    long dim_j = 0;
    long dim_nj = 0;
    long rank = 0;
    bool perfect = false;
    Cyclotomic det;  // of the pairing on independent generator subsets
};

struct PairingData {
    long j = 0;
    std::vector<PairingBlock> blocks;
    bool perfect = true;
    std::vector<Cyclotomic> gamma;  // gamma_0..gamma_n, gamma_0 = 1
    std::vector<long> epsilon;
};

namespace detail {

inline Cyclotomic dense_det(std::vector<std::vector<Cyclotomic>> m) {
    Cyclotomic det(Rational(1));
    std::size_t nn = m.size();
    for (std::size_t col = 0; col < nn; ++col) {
        std::size_t pr = nn;
        for (std::size_t r = col; r < nn; ++r)
            if (!m[r][col].is_zero()) { pr = r; break; }
        if (pr == nn) return Cyclotomic();
        if (pr != col) {
            std::swap(m[pr], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < nn; ++r) {
            if (m[r][col].is_zero()) continue;
            Cyclotomic f = m[r][col] / m[col][col];
            for (std::size_t cc = col; cc < nn; ++cc) m[r][cc] -= f * m[col][cc];
        }
    }
    return det;
}

/// Greedy independent subset of a list of sparse vectors (indices kept).
inline std::vector<std::size_t> independent_subset(long ambient,
                                                   const std::vector<SparseVector>& vecs) {
    std::vector<std::size_t> picked;
    std::vector<SparseVector> acc;
    for (std::size_t i = 0; i < vecs.size(); ++i) {
        acc.push_back(vecs[i]);
        Subspace s = Subspace::from_vectors(ambient, acc);
        if (s.dim() == static_cast<long>(acc.size()))
            picked.push_back(i);
        else
            acc.pop_back();
    }
    return picked;
}

}  // namespace detail

/// Blockwise duality pairing between e W_j f and f W_{n-j} e with entries
/// c_{qp}; perfect iff every block is square of full rank. The scalars
/// gamma_j solve (-1)^n gamma_{j-1} eps_j = gamma_j eps_{n-j+1} (-1)^j.
inline PairingData pairing(const Superpotential& sp, long j) {
    const QuiverPtr& q = sp.quiver();
    long n = sp.degree();
    if (j < 0 || j > n) throw std::invalid_argument("pairing: degree out of range");
    PathAlgebraElement top = sp.top_part();
    PairingData data;
    data.j = j;
    data.epsilon = epsilon_table(n);
    data.gamma.assign(n + 1, Cyclotomic(Rational(1)));
    for (long i = 1; i <= n; ++i) {
        Cyclotomic ratio(Rational(data.epsilon[i] * data.epsilon[n - i + 1]));
        Cyclotomic parity(Rational((n - i) % 2 == 0 ? 1 : -1));
        data.gamma[i] = parity * data.gamma[i - 1] * ratio;
    }

    PathBasis bj = PathBasis::of_length(q, j);
    PathBasis bnj = PathBasis::of_length(q, n - j);
    for (long e = 0; e < q->vertex_count(); ++e) {
        for (long f = 0; f < q->vertex_count(); ++f) {
            // Generators of e W_j f: p with |p| = n-j, t(p) = e, h(p) = f.
            std::vector<Path> rows = enumerate_paths(q, n - j, e, f);
            std::vector<Path> cols = enumerate_paths(q, j, f, e);
            std::vector<SparseVector> row_vecs, col_vecs;
            for (const Path& p : rows) row_vecs.push_back(bj.coords(left_derivative(p, top)));
            for (const Path& p : cols) col_vecs.push_back(bnj.coords(left_derivative(p, top)));
            PairingBlock blk;
            blk.row_vertex = e;
            blk.col_vertex = f;
            blk.dim_j = Subspace::from_vectors(bj.size(), row_vecs).dim();
            blk.dim_nj = Subspace::from_vectors(bnj.size(), col_vecs).dim();
            if (blk.dim_j == 0 && blk.dim_nj == 0) continue;
            // Pairing on generators: M[p][q'] = c_{q'p}.
            std::vector<SparseVector> pairing_rows;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                SparseVector rv;
                for (std::size_t cc = 0; cc < cols.size(); ++cc) {
                    auto qp = q->compose(cols[cc], rows[r]);
                    if (!qp) continue;
                    Cyclotomic v = top.coeff(*qp);
                    if (!v.is_zero()) sv_set(rv, static_cast<long>(cc), v);
                }
                pairing_rows.push_back(std::move(rv));
            }
            blk.rank =
                spforge::rank(SparseMatrix::from_rows(static_cast<long>(cols.size()), pairing_rows));
            blk.perfect = blk.dim_j == blk.dim_nj && blk.rank == blk.dim_j;
            if (blk.perfect && blk.dim_j > 0) {
                auto rsel = detail::independent_subset(bj.size(), row_vecs);
                auto csel = detail::independent_subset(bnj.size(), col_vecs);
                std::vector<std::vector<Cyclotomic>> sq(rsel.size(),
                                                        std::vector<Cyclotomic>(csel.size()));
                for (std::size_t r = 0; r < rsel.size(); ++r)
                    for (std::size_t cc = 0; cc < csel.size(); ++cc)
                        sq[r][cc] = sv_get(pairing_rows[rsel[r]], static_cast<long>(csel[cc]));
                blk.det = detail::dense_det(std::move(sq));
                if (blk.det.is_zero()) blk.perfect = false;
            }
            if (!blk.perfect) data.perfect = false;
            data.blocks.push_back(std::move(blk));
        }
    }
    return data;
}

}  // namespace spforge

#endif  // SPFORGE_CY_HPP
