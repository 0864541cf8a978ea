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

#ifndef SPFORGE_GROUPS_HPP
#define SPFORGE_GROUPS_HPP

#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spforge/superpotential.hpp"

namespace spforge {

/// Dense square matrix over the cyclotomic field.
struct CycMatrix {
    long dim = 0;
    std::vector<Cyclotomic> a;  // row-major

    CycMatrix() = default;
    explicit CycMatrix(long d) : dim(d), a(d * d) {}

    static CycMatrix identity(long d) {
        CycMatrix m(d);
        for (long i = 0; i < d; ++i) m.at(i, i) = Cyclotomic(Rational(1));
        return m;
    }

    Cyclotomic& at(long r, long c) { return a[r * dim + c]; }
    const Cyclotomic& at(long r, long c) const { return a[r * dim + c]; }

    friend CycMatrix operator*(const CycMatrix& x, const CycMatrix& y) {
        CycMatrix r(x.dim);
        for (long i = 0; i < x.dim; ++i)
            for (long kk = 0; kk < x.dim; ++kk) {
                const Cyclotomic& xv = x.at(i, kk);
                if (xv.is_zero()) continue;
                for (long jj = 0; jj < x.dim; ++jj) {
                    const Cyclotomic& yv = y.at(kk, jj);
                    if (!yv.is_zero()) r.at(i, jj) += xv * yv;
                }
            }
        return r;
    }

    friend bool operator==(const CycMatrix& x, const CycMatrix& y) {
        if (x.dim != y.dim) return false;
        for (std::size_t i = 0; i < x.a.size(); ++i)
            if (!(x.a[i] == y.a[i])) return false;
        return true;
    }
    friend bool operator<(const CycMatrix& x, const CycMatrix& y) {
        if (x.dim != y.dim) return x.dim < y.dim;
        for (std::size_t i = 0; i < x.a.size(); ++i) {
            int c = Cyclotomic::compare(x.a[i], y.a[i]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    CycMatrix transpose() const {
        CycMatrix r(dim);
        for (long i = 0; i < dim; ++i)
            for (long j = 0; j < dim; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Cyclotomic trace() const {
        Cyclotomic t;
        for (long i = 0; i < dim; ++i) t += at(i, i);
        return t;
    }

    Cyclotomic det() const {
        CycMatrix m = *this;
        Cyclotomic d(Rational(1));
        for (long col = 0; col < dim; ++col) {
            long pr = -1;
            for (long r = col; r < dim; ++r)
                if (!m.at(r, col).is_zero()) { pr = r; break; }
            if (pr < 0) return Cyclotomic();
            if (pr != col) {
                for (long c = 0; c < dim; ++c) std::swap(m.at(pr, c), m.at(col, c));
                d = -d;
            }
            d *= m.at(col, col);
            for (long r = col + 1; r < dim; ++r) {
                if (m.at(r, col).is_zero()) continue;
                Cyclotomic f = m.at(r, col) / m.at(col, col);
                for (long c = col; c < dim; ++c) m.at(r, c) -= f * m.at(col, c);
            }
        }
        return d;
    }

    long rank() const {
        SparseMatrix s(dim, dim);
        for (long i = 0; i < dim; ++i)
            for (long j = 0; j < dim; ++j)
                if (!at(i, j).is_zero()) s.set(i, j, at(i, j));
        return spforge::rank(s);
    }
};

/// Finite matrix group: closed element list with the identity at index 0,
/// multiplication table, inverses and conjugacy classes.
class MatrixGroup {
   public:
    /// BFS closure from the identity in the given generator order; throws when
    /// the closure exceeds the bound (mis-entered or non-finite generators).
    static MatrixGroup enumerate(const std::vector<CycMatrix>& generators, long bound = 100000) {
        if (generators.empty()) throw std::invalid_argument("enumerate_group: no generators");
        long d = generators[0].dim;
        long order = 1;
        for (const auto& g : generators) {
            if (g.dim != d) throw std::invalid_argument("enumerate_group: mixed dimensions");
            if (g.det().is_zero())
                throw std::invalid_argument("enumerate_group: singular generator");
            for (const auto& entry : g.a) order = lcm_long(order, entry.order());
        }
        // Common cyclotomic order keeps element comparison canonical.
        std::vector<CycMatrix> gens = generators;
        for (auto& g : gens)
            for (auto& entry : g.a) entry = entry.lifted_to(order);

        MatrixGroup grp;
        grp.dim_ = d;
        CycMatrix id = CycMatrix::identity(d);
        for (auto& entry : id.a) entry = entry.lifted_to(order);
        grp.elements_.push_back(id);
        std::map<CycMatrix, long> index;
        index.emplace(id, 0);
        for (std::size_t head = 0; head < grp.elements_.size(); ++head) {
            CycMatrix current = grp.elements_[head];
            for (const auto& g : gens) {
                CycMatrix prod = current * g;
                if (index.emplace(prod, static_cast<long>(grp.elements_.size())).second) {
                    grp.elements_.push_back(prod);
                    if (static_cast<long>(grp.elements_.size()) > bound)
                        throw std::runtime_error(
                            "enumerate_group: closure exceeds bound " + std::to_string(bound) +
                            " (non-finite or mis-entered generators?)");
                }
            }
        }
        for (const auto& g : gens) grp.generator_indices_.push_back(index.at(g));
        grp.build_table(index);
        grp.build_classes();
        return grp;
    }

    long dimension() const { return dim_; }
    long order() const { return static_cast<long>(elements_.size()); }
    const std::vector<CycMatrix>& elements() const { return elements_; }
    const CycMatrix& element(long i) const { return elements_.at(i); }
    const std::vector<long>& generator_indices() const { return generator_indices_; }

    long multiply(long i, long j) const { return table_[i][j]; }
    long inverse(long i) const { return inverse_[i]; }

    long element_order(long i) const {
        long cur = i, ord = 1;
        while (cur != 0) {
            cur = multiply(cur, i);
            ++ord;
        }
        return ord;
    }

    long class_count() const { return static_cast<long>(class_rep_.size()); }
    long class_of(long element) const { return class_of_[element]; }
    long class_rep(long c) const { return class_rep_[c]; }
    long class_size(long c) const { return class_size_[c]; }
    long inverse_class(long c) const { return class_of_[inverse_[class_rep_[c]]]; }
    const std::vector<std::vector<long>>& class_members() const { return class_members_; }

   private:
    void build_table(const std::map<CycMatrix, long>& index) {
        long n = order();
        table_.assign(n, std::vector<long>(n, 0));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) table_[i][j] = index.at(elements_[i] * elements_[j]);
        inverse_.assign(n, 0);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                if (table_[i][j] == 0) {
                    inverse_[i] = j;
                    break;
                }
    }

    void build_classes() {
        long n = order();
        class_of_.assign(n, -1);
        for (long i = 0; i < n; ++i) {
            if (class_of_[i] >= 0) continue;
            long c = static_cast<long>(class_rep_.size());
            class_rep_.push_back(i);
            class_members_.emplace_back();
            for (long x = 0; x < n; ++x) {
                long conj = table_[table_[x][i]][inverse_[x]];
                if (class_of_[conj] < 0) {
                    class_of_[conj] = c;
                    class_members_[c].push_back(conj);
                }
            }
        }
        for (const auto& members : class_members_)
            class_size_.push_back(static_cast<long>(members.size()));
    }

    long dim_ = 0;
    std::vector<CycMatrix> elements_;
    std::vector<long> generator_indices_;
    std::vector<std::vector<long>> table_;
    std::vector<long> inverse_;
    std::vector<long> class_of_, class_rep_, class_size_;
    std::vector<std::vector<long>> class_members_;
};

/// Exact irreducible character table; every certification invariant
/// (orthogonality both ways, degree sum) is checked in exact arithmetic
/// before the table is returned.
struct CharacterTable {
    long group_order = 0;
    std::vector<long> class_rep;   // class -> element index
    std::vector<long> class_size;
    std::vector<long> inverse_class;
    std::vector<std::vector<Cyclotomic>> rows;  // rows[char][class]
    std::vector<long> dims;

    long count() const { return static_cast<long>(rows.size()); }

    Cyclotomic inner(const std::vector<Cyclotomic>& x, const std::vector<Cyclotomic>& y) const {
        Cyclotomic acc;
        for (std::size_t c = 0; c < x.size(); ++c)
            acc += Cyclotomic(Rational(class_size[c])) * x[c] * y[inverse_class[c]];
        return acc / Cyclotomic(Rational(group_order));
    }
};

namespace detail {

using CD = std::complex<long double>;

/// Exact characteristic polynomial by Faddeev-LeVerrier (monic, low first).
inline std::vector<Rational> char_poly(const std::vector<std::vector<Rational>>& m) {
    long k = static_cast<long>(m.size());
    std::vector<std::vector<Rational>> a = m;
    std::vector<Rational> coeff(k + 1);
    coeff[k] = Rational(1);
    std::vector<std::vector<Rational>> work = m;
    for (long step = 1; step <= k; ++step) {
        if (step > 1) {
            // work = m * (work + c I)
            for (long i = 0; i < k; ++i) work[i][i] += coeff[k - step + 1];
            std::vector<std::vector<Rational>> next(k, std::vector<Rational>(k));
            for (long i = 0; i < k; ++i)
                for (long kk = 0; kk < k; ++kk) {
                    if (m[i][kk].is_zero()) continue;
                    for (long j = 0; j < k; ++j) next[i][j] += m[i][kk] * work[kk][j];
                }
            work = std::move(next);
        }
        Rational tr;
        for (long i = 0; i < k; ++i) tr += work[i][i];
        coeff[k - step] = -(tr / Rational(step));
    }
    return coeff;
}

/// Durand-Kerner root finder for a monic polynomial (low-first coefficients).
inline std::vector<CD> poly_roots(const std::vector<Rational>& coeff) {
    long deg = static_cast<long>(coeff.size()) - 1;
    std::vector<CD> c(deg + 1);
    for (long i = 0; i <= deg; ++i) c[i] = CD(coeff[i].to_long_double(), 0.0L);
    auto eval = [&](CD z) {
        CD acc = c[deg];
        for (long i = deg - 1; i >= 0; --i) acc = acc * z + c[i];
        return acc;
    };
    long double bound = 1.0L;
    for (long i = 0; i < deg; ++i) bound = std::max(bound, 1.0L + fabsl(c[i].real()));
    std::vector<CD> z(deg);
    CD seed(0.4L, 0.9L);
    CD cur(1.0L, 0.0L);
    for (long i = 0; i < deg; ++i) {
        cur *= seed;
        z[i] = cur * bound;
    }
    for (int iter = 0; iter < 500; ++iter) {
        long double worst = 0.0L;
        for (long i = 0; i < deg; ++i) {
            CD num = eval(z[i]);
            CD den(1.0L, 0.0L);
            for (long j = 0; j < deg; ++j)
                if (j != i) den *= (z[i] - z[j]);
            CD delta = num / den;
            z[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-16L) break;
    }
    return z;
}

/// Null vector of a complex matrix (numerically singular by construction).
inline std::vector<CD> null_vector(std::vector<std::vector<CD>> m) {
    long k = static_cast<long>(m.size());
    std::vector<long> pivot_col;
    long row = 0;
    std::vector<bool> used(k, false);
    for (long col = 0; col < k && row < k; ++col) {
        long pr = -1;
        long double best = 1e-10L;
        for (long r = row; r < k; ++r)
            if (std::abs(m[r][col]) > best) { best = std::abs(m[r][col]); pr = r; }
        if (pr < 0) continue;
        std::swap(m[row], m[pr]);
        for (long r = 0; r < k; ++r) {
            if (r == row) continue;
            CD f = m[r][col] / m[row][col];
            for (long cc = col; cc < k; ++cc) m[r][cc] -= f * m[row][cc];
        }
        pivot_col.push_back(col);
        used[col] = true;
        ++row;
    }
    std::vector<CD> v(k, CD(0.0L, 0.0L));
    long free_col = -1;
    for (long col = 0; col < k; ++col)
        if (!used[col]) { free_col = col; break; }
    if (free_col < 0) free_col = k - 1;  // fall back: treat the last as free
    v[free_col] = CD(1.0L, 0.0L);
    for (long r = 0; r < static_cast<long>(pivot_col.size()); ++r) {
        long pc = pivot_col[r];
        if (pc == free_col) continue;
        v[pc] = -m[r][free_col] / m[r][pc];
    }
    return v;
}

/// All multisets of size total from values 0..m-1, as count vectors.
inline void multisets(long m, long total, std::vector<long>& cur,
                      const std::function<void(const std::vector<long>&)>& emit, long from = 0) {
    if (from == m - 1) {
        cur[from] = total;
        emit(cur);
        cur[from] = 0;
        return;
    }
    for (long take = 0; take <= total; ++take) {
        cur[from] = take;
        multisets(m, total - take, cur, emit, from + 1);
    }
    cur[from] = 0;
}

}  // namespace detail

/// Burnside class-algebra character table: class-sum matrices are diagonalized
/// numerically to discover the table, every value is recognized as an exact
/// sum of roots of unity, and the whole table is certified by exact row and
/// column orthogonality before being returned.
inline CharacterTable character_table(const MatrixGroup& g) {
    long k = g.class_count();
    long n = g.order();
    CharacterTable table;
    table.group_order = n;
    for (long c = 0; c < k; ++c) {
        table.class_rep.push_back(g.class_rep(c));
        table.class_size.push_back(g.class_size(c));
        table.inverse_class.push_back(g.inverse_class(c));
    }

    // Class structure constants a[i][j][c]: C_i C_j = sum_c a_ijc C_c.
    std::vector<std::vector<std::vector<long>>> a(
        k, std::vector<std::vector<long>>(k, std::vector<long>(k, 0)));
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) {
            std::vector<long> cnt(k, 0);
            for (long x : g.class_members()[i])
                for (long y : g.class_members()[j]) ++cnt[g.class_of(g.multiply(x, y))];
            for (long c = 0; c < k; ++c) {
                if (cnt[c] % g.class_size(c) != 0)
                    throw std::logic_error("character_table: inconsistent class constants");
                a[i][j][c] = cnt[c] / g.class_size(c);
            }
        }

    std::vector<long> elt_order(k);
    for (long c = 0; c < k; ++c) elt_order[c] = g.element_order(g.class_rep(c));

    for (int attempt = 1; attempt <= 8; ++attempt) {
        // Random integer combination of the transposed class matrices; the
        // common eigenvectors (w_c) are the central characters themselves.
        std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
        std::vector<std::vector<detail::CD>> mc(k, std::vector<detail::CD>(k));
        for (long i = 0; i < k; ++i) {
            long weight = 1 + ((17 * attempt + 3 * i) % 23);
            for (long row = 0; row < k; ++row)
                for (long col = 0; col < k; ++col) {
                    // (M_i^T)_{row col} = a[i][row][col]
                    m[row][col] += Rational(weight * a[i][row][col]);
                }
        }
        for (long r = 0; r < k; ++r)
            for (long c = 0; c < k; ++c) mc[r][c] = detail::CD(m[r][c].to_long_double(), 0.0L);

        auto roots = detail::poly_roots(detail::char_poly(m));
        long double sep = 1e30L;
        for (long i = 0; i < k; ++i)
            for (long j = i + 1; j < k; ++j) sep = std::min(sep, std::abs(roots[i] - roots[j]));
        if (sep < 1e-7L) continue;  // try a better separating combination

        std::vector<std::vector<Cyclotomic>> rows;
        std::vector<long> dims;
        bool ok = true;
        for (long r = 0; r < k && ok; ++r) {
            auto shifted = mc;
            for (long i = 0; i < k; ++i) shifted[i][i] -= roots[r];
            auto w = detail::null_vector(shifted);
            if (std::abs(w[0]) < 1e-9L) { ok = false; break; }
            for (long c = k - 1; c >= 0; --c) w[c] /= w[0];  // omega at identity class is 1
            // chi(1)^2 = |G| / sum_c |w_c|^2 / |C_c|
            long double s = 0.0L;
            for (long c = 0; c < k; ++c)
                s += (w[c].real() * w[c].real() + w[c].imag() * w[c].imag()) /
                     static_cast<long double>(g.class_size(c));
            long double degf = sqrtl(static_cast<long double>(n) / s);
            long deg = llroundl(degf);
            if (deg < 1 || fabsl(degf - deg) > 1e-4L) { ok = false; break; }
            std::vector<Cyclotomic> row(k);
            for (long c = 0; c < k && ok; ++c) {
                detail::CD chi_val =
                    w[c] * static_cast<long double>(deg) / static_cast<long double>(g.class_size(c));
                long mult_order = elt_order[c];
                // chi(g) is a sum of deg many mult_order-th roots of unity.
                std::optional<Cyclotomic> found;
                std::vector<long> counts(mult_order, 0);
                std::function<void(const std::vector<long>&)> emit =
                    [&](const std::vector<long>& cnts) {
                        if (found) return;
                        detail::CD acc(0.0L, 0.0L);
                        const long double tau = 6.283185307179586476925286766559L;
                        for (long rr = 0; rr < mult_order; ++rr) {
                            if (!cnts[rr]) continue;
                            long double ang = tau * rr / mult_order;
                            acc += static_cast<long double>(cnts[rr]) *
                                   detail::CD(cosl(ang), sinl(ang));
                        }
                        if (std::abs(acc - chi_val) < 1e-6L) {
                            std::map<long, Rational> poly;
                            for (long rr = 0; rr < mult_order; ++rr)
                                if (cnts[rr]) poly[rr] = Rational(cnts[rr]);
                            found = Cyclotomic::from_poly(mult_order, poly);
                        }
                    };
                detail::multisets(mult_order, deg, counts, emit);
                if (!found) { ok = false; break; }
                row[c] = *found;
            }
            if (!ok) break;
            rows.push_back(std::move(row));
            dims.push_back(deg);
        }
        if (!ok) continue;

        // Canonical order: degree ascending, then value strings.
        std::vector<std::size_t> order_idx(rows.size());
        for (std::size_t i = 0; i < order_idx.size(); ++i) order_idx[i] = i;
        auto row_key = [&](std::size_t i) {
            std::string s;
            for (const auto& v : rows[i]) s += v.to_string() + "|";
            return s;
        };
        std::sort(order_idx.begin(), order_idx.end(), [&](std::size_t x, std::size_t y) {
            if (dims[x] != dims[y]) return dims[x] < dims[y];
            return row_key(x) < row_key(y);
        });
        CharacterTable candidate = table;
        for (std::size_t i : order_idx) {
            candidate.rows.push_back(rows[i]);
            candidate.dims.push_back(dims[i]);
        }

        // Exact certification.
        long dim_sq = 0;
        for (long d : candidate.dims) dim_sq += d * d;
        if (dim_sq != n) continue;
        bool certified = true;
        for (long i = 0; i < k && certified; ++i) {
            if (!(candidate.rows[i][0] == Cyclotomic(Rational(candidate.dims[i])))) certified = false;
            for (long j = 0; j < k && certified; ++j) {
                Cyclotomic ip = candidate.inner(candidate.rows[i], candidate.rows[j]);
                if (!(ip == Cyclotomic(Rational(i == j ? 1 : 0)))) certified = false;
            }
        }
        // Column orthogonality: sum_chi chi(g_i) conj(chi(g_j)) = delta |G|/|C_i|.
        for (long ci = 0; ci < k && certified; ++ci)
            for (long cj = 0; cj < k && certified; ++cj) {
                Cyclotomic acc;
                for (long r = 0; r < k; ++r)
                    acc += candidate.rows[r][ci] * candidate.rows[r][cj].conjugate();
                Cyclotomic expect =
                    ci == cj ? Cyclotomic(Rational(n, g.class_size(ci))) : Cyclotomic();
                if (!(acc == expect)) certified = false;
            }
        if (!certified) continue;
        return candidate;
    }
    throw std::runtime_error("character_table: failed to certify a table for this group");
}

/// Exact certification of a user-supplied table (the configurable fallback).
inline bool verify_character_table(const MatrixGroup& g, const CharacterTable& table) {
    long k = g.class_count();
    if (table.count() != k) return false;
    long dim_sq = 0;
    for (long d : table.dims) dim_sq += d * d;
    if (dim_sq != g.order()) return false;
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) {
            Cyclotomic ip = table.inner(table.rows[i], table.rows[j]);
            if (!(ip == Cyclotomic(Rational(i == j ? 1 : 0)))) return false;
        }
    return true;
}

enum class McKayRep {
    defining,        // chi_V = trace of the defining matrices
    defining_plus_dual  // chi_V = trace + conjugate trace (h + h*)
};

/// McKay quiver data: vertices are irreducible characters, a_ij arrows i->j,
/// det-twist vertex permutation attached.
struct McKayQuiver {
    QuiverPtr quiver;
    std::vector<std::vector<long>> multiplicities;
    std::vector<long> twist;  // i -> index of det (x) chi_i
    std::vector<long> dims;
};

inline std::vector<Cyclotomic> defining_character(const MatrixGroup& g, McKayRep rep) {
    std::vector<Cyclotomic> chi;
    for (long c = 0; c < g.class_count(); ++c) {
        Cyclotomic t = g.element(g.class_rep(c)).trace();
        chi.push_back(rep == McKayRep::defining ? t : t + t.conjugate());
    }
    return chi;
}

inline std::vector<long> det_twist(const MatrixGroup& g, const CharacterTable& table,
                                   McKayRep rep = McKayRep::defining) {
    std::vector<Cyclotomic> chi_det;
    for (long c = 0; c < g.class_count(); ++c) {
        Cyclotomic d = g.element(g.class_rep(c)).det();
        // det of g + (g^-1)^T is det(g)/det(g) = 1.
        chi_det.push_back(rep == McKayRep::defining ? d : Cyclotomic(Rational(1)));
    }
    std::vector<long> twist;
    for (long i = 0; i < table.count(); ++i) {
        std::vector<Cyclotomic> prod(table.count());
        for (long c = 0; c < table.count(); ++c) prod[c] = chi_det[c] * table.rows[i][c];
        long found = -1;
        for (long j = 0; j < table.count(); ++j)
            if (prod == table.rows[j]) { found = j; break; }
        if (found < 0)
            throw std::logic_error("det_twist: det * chi_i is not an irreducible character "
                                   "(character table bug)");
        twist.push_back(found);
    }
    return twist;
}

inline McKayQuiver mckay_quiver(const MatrixGroup& g, const CharacterTable& table,
                                McKayRep rep = McKayRep::defining,
                                const std::map<std::string, std::string>& aliases = {}) {
    long k = table.count();
    std::vector<Cyclotomic> chi_v = defining_character(g, rep);
    McKayQuiver mk;
    mk.dims = table.dims;
    mk.multiplicities.assign(k, std::vector<long>(k, 0));
    for (long i = 0; i < k; ++i) {
        std::vector<Cyclotomic> prod(k);
        for (long c = 0; c < k; ++c) prod[c] = table.rows[i][c] * chi_v[c];
        for (long j = 0; j < k; ++j) {
            Cyclotomic ip = table.inner(prod, table.rows[j]);
            if (!ip.is_rational() || !ip.rational_value().is_integer() ||
                ip.rational_value().sign() < 0)
                throw std::logic_error("mckay_quiver: inner product is not a nonnegative integer");
            mk.multiplicities[i][j] = ip.rational_value().numerator().get_si();
        }
    }
    std::vector<std::string> labels;
    for (long i = 0; i < k; ++i) labels.push_back(std::to_string(i));
    std::vector<Arrow> arrows;
    for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j)
            for (long c = 1; c <= mk.multiplicities[i][j]; ++c) {
                std::string name =
                    std::to_string(i) + ">" + std::to_string(j) + "#" + std::to_string(c);
                auto it = aliases.find(name);
                if (it != aliases.end()) name = it->second;
                arrows.push_back({name, i, j});
            }
    mk.quiver = Quiver::create(labels, arrows);
    mk.twist = det_twist(g, table, rep);
    return mk;
}

/// Small group: no pseudo-reflections (non-identity g with rank(g - I) = 1).
inline bool is_small(const MatrixGroup& g) {
    CycMatrix id = CycMatrix::identity(g.dimension());
    for (long c = 0; c < g.class_count(); ++c) {
        if (g.class_rep(c) == 0) continue;
        CycMatrix m = g.element(g.class_rep(c));
        for (long i = 0; i < g.dimension(); ++i) m.at(i, i) -= Cyclotomic(Rational(1));
        if (m.rank() == 1) return false;
    }
    return true;
}

inline bool is_in_sl(const MatrixGroup& g) {
    for (long gi : g.generator_indices())
        if (!(g.element(gi).det() == Cyclotomic(Rational(1)))) return false;
    return true;
}

struct SymplecticReflectionReport {
    std::vector<long> classes;  // conjugacy classes with rank(g - I) = 2
    long predicted_dimension = 0;  // class count + 1 (the parameter t)
    long acting_dimension = 0;
};

/// Conjugacy classes acting as symplectic reflections. With doubled = true
/// the action is g + (g^-1)^T on h + h*; otherwise the given matrices act and
/// the dimension must already be even.
inline SymplecticReflectionReport symplectic_reflections(const MatrixGroup& g,
                                                         bool doubled = false) {
    SymplecticReflectionReport rep;
    long d = g.dimension();
    rep.acting_dimension = doubled ? 2 * d : d;
    if (rep.acting_dimension % 2 != 0)
        throw std::invalid_argument("symplectic_reflections: odd-dimensional action");
    for (long c = 0; c < g.class_count(); ++c) {
        if (g.class_rep(c) == 0) continue;  // identity excluded
        CycMatrix m = g.element(g.class_rep(c));
        CycMatrix act;
        if (doubled) {
            CycMatrix dual = g.element(g.inverse(g.class_rep(c))).transpose();
            act = CycMatrix(2 * d);
            for (long i = 0; i < d; ++i)
                for (long j = 0; j < d; ++j) {
                    act.at(i, j) = m.at(i, j);
                    act.at(d + i, d + j) = dual.at(i, j);
                }
        } else {
            act = m;
        }
        for (long i = 0; i < act.dim; ++i) act.at(i, i) -= Cyclotomic(Rational(1));
        if (act.rank() == 2) rep.classes.push_back(c);
    }
    rep.predicted_dimension = static_cast<long>(rep.classes.size()) + 1;
    return rep;
}

}  // namespace spforge

#endif  // SPFORGE_GROUPS_HPP
