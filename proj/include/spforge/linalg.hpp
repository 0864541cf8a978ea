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

#ifndef SPFORGE_LINALG_HPP
#define SPFORGE_LINALG_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "spforge/cyclotomic.hpp"

namespace spforge {

/// Sparse coordinate vector: index -> nonzero value.
using SparseVector = std::map<long, Cyclotomic>;

inline bool sv_is_zero(const SparseVector& v) { return v.empty(); }

inline Cyclotomic sv_get(const SparseVector& v, long i) {
    auto it = v.find(i);
    return it == v.end() ? Cyclotomic() : it->second;
}

inline void sv_set(SparseVector& v, long i, const Cyclotomic& x) {
    if (x.is_zero())
        v.erase(i);
    else
        v[i] = x;
}

inline void sv_add_to(SparseVector& v, long i, const Cyclotomic& x) {
    if (x.is_zero()) return;
    auto it = v.find(i);
    if (it == v.end()) {
        v.emplace(i, x);
    } else {
        it->second += x;
        if (it->second.is_zero()) v.erase(it);
    }
}

/// v += scale * w
inline void sv_axpy(SparseVector& v, const Cyclotomic& scale, const SparseVector& w) {
    if (scale.is_zero()) return;
    for (const auto& [i, x] : w) sv_add_to(v, i, scale * x);
}

inline void sv_scale(SparseVector& v, const Cyclotomic& scale) {
    if (scale.is_zero()) {
        v.clear();
        return;
    }
    for (auto& [i, x] : v) x *= scale;
}

inline bool sv_equal(const SparseVector& a, const SparseVector& b) {
    if (a.size() != b.size()) return false;
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (!(ia->second == ib->second)) return false;
    }
    return true;
}

class SparseMatrix {
   public:
    SparseMatrix(long rows, long cols) : rows_(rows), cols_(cols), row_(rows) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMatrix: negative shape");
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    void set(long r, long c, const Cyclotomic& v) {
        check(r, c);
        sv_set(row_[r], c, v);
    }
    void add_to(long r, long c, const Cyclotomic& v) {
        check(r, c);
        sv_add_to(row_[r], c, v);
    }
    Cyclotomic get(long r, long c) const {
        check(r, c);
        return sv_get(row_[r], c);
    }
    const SparseVector& row(long r) const { return row_[r]; }

    static SparseMatrix from_rows(long cols, const std::vector<SparseVector>& rows) {
        SparseMatrix m(static_cast<long>(rows.size()), cols);
        m.row_ = rows;
        return m;
    }

    static SparseMatrix from_columns(long rows, const std::vector<SparseVector>& cols) {
        SparseMatrix m(rows, static_cast<long>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (const auto& [r, v] : cols[c]) m.set(r, static_cast<long>(c), v);
        return m;
    }

    SparseVector apply(const SparseVector& x) const {
        SparseVector y;
        for (long r = 0; r < rows_; ++r) {
            Cyclotomic acc;
            for (const auto& [c, v] : row_[r]) {
                auto it = x.find(c);
                if (it != x.end()) acc += v * it->second;
            }
            sv_set(y, r, acc);
        }
        return y;
    }

   private:
    void check(long r, long c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::invalid_argument("SparseMatrix: index out of range");
    }

    long rows_, cols_;
    std::vector<SparseVector> row_;
};

namespace detail {

/// Result of row reduction: reduced echelon rows with unit pivots, increasing
/// pivot columns, and entries cleared above every pivot.
struct Rref {
    long ambient = 0;
    std::vector<SparseVector> rows;
    std::vector<long> pivots;
    long rank() const { return static_cast<long>(rows.size()); }
};

/// Fraction-free forward elimination (Bareiss one-step formula) followed by
/// normalization to reduced echelon form. Pivot choice: least column index,
/// then the sparsest candidate row (densest rows processed last).
inline Rref rref(long ambient, std::vector<SparseVector> work) {
    Rref out;
    out.ambient = ambient;
    std::vector<SparseVector> done;
    std::vector<long> done_piv;
    Cyclotomic prev_pivot(Rational(1));
    work.erase(std::remove_if(work.begin(), work.end(),
                              [](const SparseVector& r) { return r.empty(); }),
               work.end());
    while (!work.empty()) {
        // Least active column among remaining rows.
        long col = -1;
        for (const auto& r : work) {
            long lead = r.begin()->first;
            if (col < 0 || lead < col) col = lead;
        }
        if (col < 0) break;
        // Sparsest row with a nonzero in that column.
        std::size_t best = work.size();
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (work[i].begin()->first != col) continue;
            if (best == work.size() || work[i].size() < work[best].size()) best = i;
        }
        SparseVector pivot_row = std::move(work[best]);
        work.erase(work.begin() + static_cast<long>(best));
        Cyclotomic pivot_val = pivot_row.begin()->second;
        for (auto& r : work) {
            auto it = r.find(col);
            if (it == r.end()) continue;
            Cyclotomic factor = it->second;
            // r <- (pivot_val * r - factor * pivot_row) / prev_pivot
            SparseVector next;
            for (const auto& [c, v] : r) sv_add_to(next, c, pivot_val * v);
            for (const auto& [c, v] : pivot_row) sv_add_to(next, c, -(factor * v));
            if (!prev_pivot.is_one()) {
                Cyclotomic inv = prev_pivot.inverse();
                for (auto& [c, v] : next) v *= inv;
            }
            r = std::move(next);
        }
        work.erase(std::remove_if(work.begin(), work.end(),
                                  [](const SparseVector& r) { return r.empty(); }),
                   work.end());
        prev_pivot = pivot_val;
        done.push_back(std::move(pivot_row));
        done_piv.push_back(col);
    }
    // Normalize pivots to 1 and clear entries above pivots.
    std::vector<std::size_t> order(done.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return done_piv[a] < done_piv[b]; });
    std::vector<SparseVector> rows;
    std::vector<long> pivots;
    for (std::size_t oi : order) {
        SparseVector r = done[oi];
        Cyclotomic inv = r.begin()->second.inverse();
        for (auto& [c, v] : r) v *= inv;
        rows.push_back(std::move(r));
        pivots.push_back(done_piv[oi]);
    }
    for (std::size_t i = rows.size(); i-- > 0;) {
        for (std::size_t j = 0; j < i; ++j) {
            auto it = rows[j].find(pivots[i]);
            if (it == rows[j].end()) continue;
            Cyclotomic f = it->second;
            SparseVector& rj = rows[j];
            sv_axpy(rj, -f, rows[i]);
        }
    }
    out.rows = std::move(rows);
    out.pivots = std::move(pivots);
    return out;
}

inline std::vector<SparseVector> matrix_rows(const SparseMatrix& m) {
    std::vector<SparseVector> rows;
    rows.reserve(m.rows());
    for (long r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    return rows;
}

}  // namespace detail

/// Linear subspace given by a reduced-echelon basis; equality of subspaces is
/// equality of the canonical bases.
class Subspace {
   public:
    explicit Subspace(long ambient) : ambient_(ambient) {}

    static Subspace from_vectors(long ambient, const std::vector<SparseVector>& vecs) {
        Subspace s(ambient);
        auto rr = detail::rref(ambient, vecs);
        s.basis_ = std::move(rr.rows);
        s.pivots_ = std::move(rr.pivots);
        return s;
    }

    long ambient() const { return ambient_; }
    long dim() const { return static_cast<long>(basis_.size()); }
    const std::vector<SparseVector>& basis() const { return basis_; }
    const std::vector<long>& pivots() const { return pivots_; }

    /// Remainder of v after reduction against the basis; zero iff v lies here.
    SparseVector reduce(const SparseVector& v) const {
        SparseVector r = v;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            auto it = r.find(pivots_[i]);
            if (it == r.end()) continue;
            Cyclotomic f = it->second;
            sv_axpy(r, -f, basis_[i]);
        }
        return r;
    }

    bool contains(const SparseVector& v) const { return reduce(v).empty(); }

    bool contains(const Subspace& other) const {
        for (const auto& b : other.basis_)
            if (!contains(b)) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        if (a.ambient_ != b.ambient_ || a.basis_.size() != b.basis_.size()) return false;
        for (std::size_t i = 0; i < a.basis_.size(); ++i)
            if (!sv_equal(a.basis_[i], b.basis_[i])) return false;
        return true;
    }

   private:
    long ambient_;
    std::vector<SparseVector> basis_;
    std::vector<long> pivots_;
};

inline long rank(const SparseMatrix& m) {
    return detail::rref(m.cols(), detail::matrix_rows(m)).rank();
}

/// Basis of {v : M v = 0}, echelonized and deterministic.
inline Subspace nullspace(const SparseMatrix& m) {
    auto rr = detail::rref(m.cols(), detail::matrix_rows(m));
    std::vector<bool> is_pivot(m.cols(), false);
    for (long p : rr.pivots) is_pivot[p] = true;
    std::vector<SparseVector> basis;
    for (long f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        SparseVector v;
        sv_set(v, f, Cyclotomic(Rational(1)));
        for (std::size_t i = 0; i < rr.rows.size(); ++i) {
            Cyclotomic c = sv_get(rr.rows[i], f);
            if (!c.is_zero()) sv_set(v, rr.pivots[i], -c);
        }
        basis.push_back(std::move(v));
    }
    return Subspace::from_vectors(m.cols(), basis);
}

/// One solution of M x = b (free coordinates set to zero), or nothing.
inline std::optional<SparseVector> solve(const SparseMatrix& m, const SparseVector& b) {
    for (const auto& [i, v] : b)
        if (i < 0 || i >= m.rows()) throw std::invalid_argument("solve: rhs index out of range");
    long bcol = m.cols();
    std::vector<SparseVector> rows = detail::matrix_rows(m);
    for (long r = 0; r < m.rows(); ++r) {
        Cyclotomic rb = sv_get(b, r);
        if (!rb.is_zero()) rows[r][bcol] = rb;
    }
    auto rr = detail::rref(m.cols() + 1, rows);
    SparseVector x;
    for (std::size_t i = 0; i < rr.rows.size(); ++i) {
        if (rr.pivots[i] == bcol) return std::nullopt;  // inconsistent
        Cyclotomic v = sv_get(rr.rows[i], bcol);
        if (!v.is_zero()) sv_set(x, rr.pivots[i], v);
    }
    return x;
}

/// Intersection via the nullspace of stacked bases.
inline Subspace intersect(const Subspace& u, const Subspace& w) {
    if (u.ambient() != w.ambient())
        throw std::invalid_argument("intersect: ambient dimension mismatch");
    std::vector<SparseVector> cols;
    for (const auto& b : u.basis()) cols.push_back(b);
    for (const auto& b : w.basis()) {
        SparseVector neg = b;
        for (auto& [i, v] : neg) v = -v;
        cols.push_back(neg);
    }
    SparseMatrix m = SparseMatrix::from_columns(u.ambient(), cols);
    Subspace combos = nullspace(m);
    std::vector<SparseVector> vecs;
    for (const auto& combo : combos.basis()) {
        SparseVector v;
        for (long i = 0; i < u.dim(); ++i) {
            Cyclotomic c = sv_get(combo, i);
            if (!c.is_zero()) sv_axpy(v, c, u.basis()[i]);
        }
        vecs.push_back(std::move(v));
    }
    return Subspace::from_vectors(u.ambient(), vecs);
}

inline bool contains(const Subspace& u, const SparseVector& v) { return u.contains(v); }

}  // namespace spforge

#endif  // SPFORGE_LINALG_HPP
