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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "spforge/cyclotomic.hpp"

using spforge::Cyclotomic;
using spforge::Rational;

namespace {

Cyclotomic random_cyclotomic(std::mt19937& rng) {
    static const long orders[] = {1, 2, 3, 4, 5, 6, 8, 12};
    std::uniform_int_distribution<int> ord(0, 7);
    std::uniform_int_distribution<long> num(-3, 3);
    std::uniform_int_distribution<long> den(1, 3);
    long n = orders[ord(rng)];
    std::map<long, Rational> poly;
    for (long k = 0; k < n; ++k) {
        long a = num(rng);
        if (a != 0) poly[k] = Rational(a, den(rng));
    }
    return Cyclotomic::from_poly(n, poly);
}

long double cabs(std::complex<long double> z) { return sqrtl(z.real() * z.real() + z.imag() * z.imag()); }

}  // namespace

TEST_CASE("normalize reduces powers modulo the cyclotomic polynomial") {
    CHECK(Cyclotomic::zeta(4, 2) == Cyclotomic(Rational(-1)));
    CHECK(Cyclotomic::zeta(3, 1) + Cyclotomic::zeta(3, 2) == Cyclotomic(Rational(-1)));
    CHECK(Cyclotomic::zeta(6, 3) == Cyclotomic(Rational(-1)));
    CHECK(Cyclotomic::zeta(5, 7) == Cyclotomic::zeta(5, 2));
}

TEST_CASE("field arithmetic") {
    Cyclotomic one(Rational(1));
    Cyclotomic a = one + Cyclotomic::zeta(5);
    CHECK(a * a.inverse() == one);
    CHECK(Cyclotomic::zeta(4) * Cyclotomic::zeta(4) == Cyclotomic(Rational(-1)));

    Cyclotomic mixed = Cyclotomic::zeta(3) + Cyclotomic::zeta(4);
    CHECK(mixed.order() == 12);
    auto z = mixed.to_complex();
    std::complex<long double> expect =
        Cyclotomic::zeta(3).to_complex() + Cyclotomic::zeta(4).to_complex();
    CHECK(cabs(z - expect) < 1e-12L);

    CHECK_THROWS_AS(one / Cyclotomic(), std::domain_error);
}

TEST_CASE("conjugation is the inverse root of unity and an involution") {
    CHECK(Cyclotomic::zeta(8).conjugate() == Cyclotomic::zeta(8, 7));
    Cyclotomic r(Rational(3, 2));
    CHECK(r.conjugate() == r);
    Cyclotomic v = Cyclotomic::zeta(5) + Cyclotomic(Rational(2));
    CHECK(v.conjugate().conjugate() == v);
}

TEST_CASE("unify_order lands in the lcm field and preserves values") {
    auto [a, b] = Cyclotomic::unify_order(Cyclotomic::zeta(2), Cyclotomic::zeta(3));
    CHECK(a.order() == 6);
    CHECK(b.order() == 6);
    CHECK(a == Cyclotomic::zeta(6, 3));

    auto [c, d] = Cyclotomic::unify_order(Cyclotomic(Rational(1)), Cyclotomic::zeta(4));
    CHECK(c.order() == 4);
    CHECK(d.order() == 4);

    auto [e, f] = Cyclotomic::unify_order(Cyclotomic::zeta(4), Cyclotomic::zeta(6));
    CHECK(e.order() == 12);
    CHECK(f.order() == 12);
    CHECK(e == Cyclotomic::zeta(12, 3));
    CHECK(f == Cyclotomic::zeta(12, 2));
    CHECK(cabs(e.to_complex() - Cyclotomic::zeta(4).to_complex()) < 1e-12L);
    CHECK(cabs(f.to_complex() - Cyclotomic::zeta(6).to_complex()) < 1e-12L);
}

TEST_CASE("ring and field axioms on randomized triples") {
    std::mt19937 rng(20260808);
    for (int trial = 0; trial < 200; ++trial) {
        Cyclotomic a = random_cyclotomic(rng);
        Cyclotomic b = random_cyclotomic(rng);
        Cyclotomic c = random_cyclotomic(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!a.is_zero()) CHECK(a * a.inverse() == Cyclotomic(Rational(1)));
    }
}

TEST_CASE("zero detection agrees with the complex embedding") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 300; ++trial) {
        Cyclotomic a = random_cyclotomic(rng);
        bool exact_zero = a.is_zero();
        long double mag = cabs(a.to_complex());
        if (exact_zero) CHECK(mag < 1e-9L);
        if (mag > 1e-9L) CHECK(!exact_zero);
    }
}

TEST_CASE("embed then project is the identity on the smaller field") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        Cyclotomic a = random_cyclotomic(rng);
        long target = a.order() * (1 + static_cast<long>(trial % 4));
        Cyclotomic lifted = a.lifted_to(target);
        auto back = lifted.reduced_to_order(a.order());
        REQUIRE(back.has_value());
        CHECK(*back == a);
    }
    // A value genuinely outside the smaller field reports absence.
    CHECK(!Cyclotomic::zeta(12).reduced_to_order(4).has_value());
    CHECK(Cyclotomic::zeta(12, 3).reduced_to_order(4).has_value());
}

TEST_CASE("canonical string forms") {
    CHECK(Cyclotomic().to_string() == "0");
    CHECK(Cyclotomic(Rational(-1)).to_string() == "-1");
    CHECK(Cyclotomic::zeta(4).to_string() == "z(4)");
    // zeta_12^5 = zeta^3 - zeta modulo x^4 - x^2 + 1
    Cyclotomic v = Cyclotomic(Rational(1, 2)) - Cyclotomic::zeta(12, 5) * Cyclotomic(Rational(2));
    CHECK(v.to_string() == "1/2 + 2*z(12) - 2*z(12)^3");
}
