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

#ifndef SPFORGE_CYCLOTOMIC_HPP
#define SPFORGE_CYCLOTOMIC_HPP

#include <algorithm>
#include <complex>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spforge/rational.hpp"

namespace spforge {

namespace detail {

// Polynomials over Q, coefficients stored low degree first, no trailing zeros.
using QPoly = std::vector<Rational>;

inline void qpoly_trim(QPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    qpoly_trim(r);
    return r;
}

// Exact division; throws if the remainder is nonzero.
inline QPoly qpoly_divexact(QPoly num, const QPoly& den) {
    if (den.empty()) throw std::domain_error("qpoly_divexact: division by zero polynomial");
    QPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rational(0));
    const Rational& lead = den.back();
    while (num.size() >= den.size()) {
        Rational c = num.back() / lead;
        std::size_t shift = num.size() - den.size();
        q[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        qpoly_trim(num);
        if (num.empty()) break;
        if (num.size() < den.size()) break;
    }
    if (!num.empty()) throw std::domain_error("qpoly_divexact: inexact division");
    qpoly_trim(q);
    return q;
}

// Remainder of num modulo den (den monic not required).
inline QPoly qpoly_mod(QPoly num, const QPoly& den) {
    const Rational& lead = den.back();
    while (num.size() >= den.size()) {
        Rational c = num.back() / lead;
        std::size_t shift = num.size() - den.size();
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        qpoly_trim(num);
    }
    return num;
}

// N-th cyclotomic polynomial by iterated exact division of x^N - 1.
// The computation recurses over divisors, hence the recursive mutex.
inline const QPoly& cyclotomic_poly(long n) {
    static std::map<long, QPoly> cache;
    static std::recursive_mutex mtx;
    std::lock_guard<std::recursive_mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    QPoly xn1(static_cast<std::size_t>(n) + 1, Rational(0));
    xn1[0] = Rational(-1);
    xn1[static_cast<std::size_t>(n)] = Rational(1);
    QPoly acc = xn1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        acc = qpoly_divexact(acc, cyclotomic_poly(d));
    }
    return cache.emplace(n, std::move(acc)).first->second;
}

inline long euler_phi(long n) {
    return static_cast<long>(cyclotomic_poly(n).size()) - 1;
}

}  // namespace detail

/// Exact element of the cyclotomic field Q(zeta_N), stored in the power basis
/// 1, zeta, ..., zeta^(phi(N)-1) modulo the N-th cyclotomic polynomial.
/// Values are immutable after construction and all operations are pure.
class Cyclotomic {
   public:
    Cyclotomic() : order_(1), c_(1, Rational(0)) {}
    Cyclotomic(const Rational& r) : order_(1), c_(1, r) {}  // NOLINT: implicit by design
    Cyclotomic(long n) : order_(1), c_(1, Rational(n)) {}   // NOLINT: implicit by design

    /// zeta_N^k
    static Cyclotomic zeta(long order, long k = 1) {
        std::map<long, Rational> poly;
        poly[k] = Rational(1);
        return from_poly(order, poly);
    }

    /// Value of a finite sum  sum_k coeff_k * zeta_N^k, reduced to canonical form.
    static Cyclotomic from_poly(long order, const std::map<long, Rational>& poly) {
        if (order < 1) throw std::invalid_argument("Cyclotomic: order must be >= 1");
        detail::QPoly p;
        for (const auto& [expo, coeff] : poly) {
            long e = ((expo % order) + order) % order;
            if (p.size() <= static_cast<std::size_t>(e)) p.resize(e + 1, Rational(0));
            p[e] += coeff;
        }
        detail::qpoly_trim(p);
        p = detail::qpoly_mod(std::move(p), detail::cyclotomic_poly(order));
        return Cyclotomic(order, std::move(p));
    }

    long order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }
    Rational rational_value() const {
        if (!is_rational()) throw std::domain_error("Cyclotomic: not a rational value");
        return c_[0];
    }
    bool is_one() const { return is_rational() && c_[0].is_one(); }

    /// Both arguments rewritten in Q(zeta_lcm) without changing their values.
    static std::pair<Cyclotomic, Cyclotomic> unify_order(const Cyclotomic& a, const Cyclotomic& b) {
        long l = lcm_long(a.order_, b.order_);
        return {a.lifted_to(l), b.lifted_to(l)};
    }

    Cyclotomic lifted_to(long target_order) const {
        if (target_order == order_) return *this;
        if (target_order % order_ != 0)
            throw std::invalid_argument("Cyclotomic: lift target must be a multiple of the order");
        long stride = target_order / order_;
        std::map<long, Rational> poly;
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!c_[k].is_zero()) poly[static_cast<long>(k) * stride] = c_[k];
        return from_poly(target_order, poly);
    }

    /// Rewrites the value in Q(zeta_m) for m dividing the order, if it lies there.
    std::optional<Cyclotomic> reduced_to_order(long m) const {
        if (m < 1 || order_ % m != 0) return std::nullopt;
        if (m == order_) return *this;
        long phi_m = detail::euler_phi(m);
        long phi_n = static_cast<long>(detail::cyclotomic_poly(order_).size()) - 1;
        // Columns: images of zeta_m^i in the order_ basis. Solve A x = this.
        std::vector<std::vector<Rational>> a(phi_n, std::vector<Rational>(phi_m + 1, Rational(0)));
        for (long i = 0; i < phi_m; ++i) {
            Cyclotomic img = zeta(m, i).lifted_to(order_);
            for (long r = 0; r < phi_n; ++r)
                a[r][i] = r < static_cast<long>(img.c_.size()) ? img.c_[r] : Rational(0);
        }
        for (long r = 0; r < phi_n; ++r)
            a[r][phi_m] = r < static_cast<long>(c_.size()) ? c_[r] : Rational(0);
        // Dense Gaussian elimination on the augmented system.
        long row = 0;
        std::vector<long> pivot_col(phi_n, -1);
        for (long col = 0; col < phi_m && row < phi_n; ++col) {
            long pr = -1;
            for (long r = row; r < phi_n; ++r)
                if (!a[r][col].is_zero()) { pr = r; break; }
            if (pr < 0) continue;
            std::swap(a[row], a[pr]);
            for (long r = 0; r < phi_n; ++r) {
                if (r == row || a[r][col].is_zero()) continue;
                Rational f = a[r][col] / a[row][col];
                for (long cc = col; cc <= phi_m; ++cc) a[r][cc] -= f * a[row][cc];
            }
            pivot_col[row] = col;
            ++row;
        }
        std::vector<Rational> x(phi_m, Rational(0));
        for (long r = 0; r < row; ++r) x[pivot_col[r]] = a[r][phi_m] / a[r][pivot_col[r]];
        for (long r = row; r < phi_n; ++r)
            if (!a[r][phi_m].is_zero()) return std::nullopt;
        // Verify (guards against a consistent-looking system with unused pivots).
        std::map<long, Rational> poly;
        for (long i = 0; i < phi_m; ++i)
            if (!x[i].is_zero()) poly[i] = x[i];
        Cyclotomic candidate = from_poly(m, poly);
        if (!(candidate.lifted_to(order_) == *this)) return std::nullopt;
        return candidate;
    }

    Cyclotomic operator-() const {
        std::vector<Rational> r(c_);
        for (auto& x : r) x = -x;
        return Cyclotomic(order_, std::move(r));
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = unify_order(a, b);
        std::vector<Rational> r(std::max(x.c_.size(), y.c_.size()), Rational(0));
        for (std::size_t i = 0; i < x.c_.size(); ++i) r[i] += x.c_[i];
        for (std::size_t i = 0; i < y.c_.size(); ++i) r[i] += y.c_[i];
        return Cyclotomic(x.order_, std::move(r));
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = unify_order(a, b);
        detail::QPoly p = detail::qpoly_mul(x.c_, y.c_);
        p = detail::qpoly_mod(std::move(p), detail::cyclotomic_poly(x.order_));
        return Cyclotomic(x.order_, std::move(p));
    }
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

    /// Multiplicative inverse via extended Euclid against the cyclotomic polynomial.
    Cyclotomic inverse() const {
        if (is_zero()) throw std::domain_error("Cyclotomic: division by zero");
        const detail::QPoly& modulus = detail::cyclotomic_poly(order_);
        // Extended gcd(a, modulus): find u with u*a = gcd (mod modulus).
        detail::QPoly r0 = modulus, r1 = c_;
        detail::qpoly_trim(r1);
        detail::QPoly u0 = {}, u1 = {Rational(1)};
        while (!r1.empty()) {
            // r0 = q*r1 + r2
            detail::QPoly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, Rational(0));
            detail::QPoly r2 = r0;
            while (r2.size() >= r1.size() && !r2.empty()) {
                Rational cq = r2.back() / r1.back();
                std::size_t shift = r2.size() - r1.size();
                q[shift] += cq;
                for (std::size_t i = 0; i < r1.size(); ++i) r2[shift + i] -= cq * r1[i];
                detail::qpoly_trim(r2);
            }
            detail::QPoly u2 = u0;
            detail::QPoly qu1 = detail::qpoly_mul(q, u1);
            if (u2.size() < qu1.size()) u2.resize(qu1.size(), Rational(0));
            for (std::size_t i = 0; i < qu1.size(); ++i) u2[i] -= qu1[i];
            detail::qpoly_trim(u2);
            r0 = std::move(r1); r1 = std::move(r2);
            u0 = std::move(u1); u1 = std::move(u2);
        }
        if (r0.size() != 1)
            throw std::domain_error("Cyclotomic: element not invertible (not coprime to modulus)");
        detail::QPoly inv = u0;
        for (auto& x : inv) x /= r0[0];
        inv = detail::qpoly_mod(std::move(inv), modulus);
        return Cyclotomic(order_, std::move(inv));
    }

    /// Complex conjugation: zeta_N -> zeta_N^(N-1). Fixes rationals; involution.
    Cyclotomic conjugate() const {
        std::map<long, Rational> poly;
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!c_[k].is_zero()) poly[(static_cast<long>(k) * (order_ - 1)) % order_] += c_[k];
        return from_poly(order_, poly);
    }

    std::complex<long double> to_complex() const {
        const long double tau = 6.283185307179586476925286766559L;
        std::complex<long double> z(0.0L, 0.0L);
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            long double ang = tau * static_cast<long double>(k) / static_cast<long double>(order_);
            z += c_[k].to_long_double() * std::complex<long double>(cosl(ang), sinl(ang));
        }
        return z;
    }

    /// Values compare equal exactly when they are the same complex number;
    /// mixed orders are unified first, same order compares coefficient lists.
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return compare(a, b) != 0; }
    friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) { return compare(a, b) < 0; }

    static int compare(const Cyclotomic& a, const Cyclotomic& b) {
        const Cyclotomic *x = &a, *y = &b;
        Cyclotomic la, lb;
        if (a.order_ != b.order_) {
            long l = lcm_long(a.order_, b.order_);
            la = a.lifted_to(l); lb = b.lifted_to(l);
            x = &la; y = &lb;
        }
        std::size_t n = std::max(x->c_.size(), y->c_.size());
        for (std::size_t i = 0; i < n; ++i) {
            Rational xa = i < x->c_.size() ? x->c_[i] : Rational(0);
            Rational yb = i < y->c_.size() ? y->c_[i] : Rational(0);
            if (xa < yb) return -1;
            if (yb < xa) return 1;
        }
        return 0;
    }

    /// Canonical literal in the syntax accepted by the expression parser:
    /// rationals plain, powers as z(N)^k, e.g. "1/2 - 2*z(12)^5".
    std::string to_string() const {
        std::string out;
        bool first = true;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            Rational v = c_[k];
            bool neg = v.sign() < 0;
            Rational av = v.abs();
            if (first) {
                if (neg) out += "-";
            } else {
                out += neg ? " - " : " + ";
            }
            first = false;
            if (k == 0) {
                out += av.to_string();
                continue;
            }
            std::string power = "z(" + std::to_string(order_) + ")";
            if (k > 1) power += "^" + std::to_string(k);
            if (av.is_one())
                out += power;
            else
                out += av.to_string() + "*" + power;
        }
        if (first) return "0";
        return out;
    }

   private:
    Cyclotomic(long order, std::vector<Rational> coeffs) : order_(order), c_(std::move(coeffs)) {
        long phi = detail::euler_phi(order_);
        c_.resize(static_cast<std::size_t>(phi), Rational(0));
    }

    long order_;
    std::vector<Rational> c_;
};

enum class ArithOp { add, sub, mul, div };

inline Cyclotomic arith(const Cyclotomic& a, const Cyclotomic& b, ArithOp op) {
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
        case ArithOp::div: return a / b;
    }
    throw std::logic_error("arith: bad op");
}

}  // namespace spforge

#endif  // SPFORGE_CYCLOTOMIC_HPP
