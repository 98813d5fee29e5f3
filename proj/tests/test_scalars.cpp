/*
 * Copyright 2026 The mosva Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "doctest.h"

#include "mosva/laurent.hpp"
#include "mosva/rational.hpp"
#include "mosva/rational_function.hpp"

#include <climits>
#include <iterator>
#include <random>

using namespace mosva;

namespace {

constexpr Var X = 0;
constexpr Var Y = 1;
constexpr Var Z = 2;

LaurentPoly mono(std::vector<int> e, Rational c = Rational(1)) { return LaurentPoly::monomial(Monomial(std::move(e)), c); }

// Reference falling-factorial binomial over plain 64-bit integers.
long long ref_binom(long long n, int m) {
    long long num = 1, den = 1;
    for (int i = 0; i < m; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

}  // namespace

TEST_CASE("rational parse and canonical form") {
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK(Rational::parse(" -2/4 ") == Rational(-1, 2));
    CHECK_THROWS_AS(Rational::parse("2/-4"), std::invalid_argument);
    CHECK(Rational::parse("+7") == Rational(7));
    CHECK(Rational(2, -4).to_string() == "-1/2");
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational arithmetic across the int64 boundary agrees with GMP") {
    const long big = LONG_MAX;
    const Rational top(big);
    CHECK((top + Rational(1) - Rational(1)) == top);
    CHECK((top + Rational(1)).to_string() == "9223372036854775808");
    CHECK((-top - Rational(1)).to_string() == "-9223372036854775808");
    CHECK(Rational(LONG_MIN).to_string() == "-9223372036854775808");
    CHECK(Rational(LONG_MIN) + Rational(1) == -top);
    CHECK((top * top / top) == top);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(top + Rational(1) > top);
    CHECK(-(top + Rational(1)) < -top);

    std::mt19937_64 gen(11);
    const long pool[] = {0, 1, -1, 2, 3, 7, -12, 1L << 31, (1L << 40) + 5, -(1L << 53), LONG_MAX, LONG_MIN + 1, LONG_MAX / 3};
    auto pick = [&] {
        const long n = pool[gen() % std::size(pool)];
        long d = pool[gen() % std::size(pool)];
        if (d == 0) d = 1;
        Rational r(n, d);
        if (gen() % 3 == 0) r *= Rational(n == 0 ? 1 : n, 1);  // occasionally leave the inline range
        return r;
    };
    for (int t = 0; t < 2000; ++t) {
        const Rational a = pick(), b = pick();
        const mpq_class x = a.to_mpq(), y = b.to_mpq();
        CHECK(a + b == Rational(mpq_class(x + y)));
        CHECK(a - b == Rational(mpq_class(x - y)));
        CHECK(a * b == Rational(mpq_class(x * y)));
        if (!b.is_zero()) CHECK(a / b == Rational(mpq_class(x / y)));
        CHECK((a < b) == (x < y));
        CHECK((a == b) == (x == y));
        CHECK(a.to_string() == x.get_str());
    }
}

TEST_CASE("binom examples") {
    CHECK(binom(-1, 2) == Rational(1));
    CHECK(binom(3, 0) == Rational(1));
    CHECK(binom(-2, 3) == Rational(-4));
    CHECK(binom(3, 5) == Rational(0));
    CHECK(binom(7, -1) == Rational(0));
}

TEST_CASE("binom beyond the small table matches GMP") {
    mpz_class c;
    for (long n : {-200L, -49L, 48L, 60L, 300L, 100000L}) {
        for (long m : {0L, 1L, 5L, 47L, 48L, 70L}) {
            mpz_class num = 1, den = 1;
            for (long i = 0; i < m; ++i) {
                num *= n - i;
                den *= i + 1;
            }
            CHECK(binom(n, m) == Rational(mpq_class(num, den)));
        }
    }
}

TEST_CASE("binom agrees with a direct product and satisfies Pascal") {
    for (int n = -20; n <= 20; ++n) {
        for (int m = 0; m <= 10; ++m) {
            CHECK(binom(n, m) == Rational(static_cast<long>(ref_binom(n, m))));
            if (m >= 1) CHECK(binom(n, m) == binom(n - 1, m) + binom(n - 1, m - 1));
        }
    }
}

TEST_CASE("iota expansion examples") {
    CHECK(iota_expand(1, X, Y, 2) == mono({-1}) + mono({-2, 1}) + mono({-3, 2}));
    CHECK(iota_expand(2, X, Y, 1) == mono({-2}) + mono({-3, 1}, Rational(2)));
    CHECK(iota_expand(1, X, Y, 0) == mono({-1}));
    CHECK_THROWS(iota_expand(0, X, Y, 3));
}

TEST_CASE("iota(t) is the (t-1)-th divided y-derivative of iota(1)") {
    const int N = 12;
    for (int t = 1; t <= 5; ++t) {
        LaurentPoly d = iota_expand(1, X, Y, N).divided_derivative(Y, t - 1);
        LaurentPoly e = iota_expand(t, X, Y, N - t + 1);
        CHECK(d == e);
    }
}

TEST_CASE("f_mn values") {
    CHECK(f_mn(0, 0, X, Y) == RationalFunction::inverse_difference(X, Y, 1));
    CHECK(f_mn(1, 0, X, Y) == -RationalFunction::inverse_difference(X, Y, 2));
    // d/dy (x-y)^{-1} = (x-y)^{-2}
    CHECK(f_mn(0, 1, X, Y) == RationalFunction::inverse_difference(X, Y, 2));
    CHECK(f_mn(2, 1, X, Y) == RationalFunction::inverse_difference(X, Y, 4) * Rational(3));
}

TEST_CASE("f_mn expansion matches divided derivatives of the iota series") {
    const int N = 10;
    const LaurentPoly base = iota_expand(1, X, Y, N + 6);
    for (int m = 0; m <= 3; ++m) {
        for (int n = 0; n <= 3; ++n) {
            LaurentPoly d = base.divided_derivative(X, m).divided_derivative(Y, n);
            LaurentPoly e = f_mn(m, n, X, Y).expand_bounded_above({X, Y}, {0, N});
            for (const auto& [mono_, c] : d.terms())
                if (mono_[Y] <= N) CHECK(e.coefficient(mono_) == c);
            for (const auto& [mono_, c] : e.terms()) CHECK(d.coefficient(mono_) == c);
        }
    }
}

TEST_CASE("rational function arithmetic") {
    const RationalFunction f = RationalFunction::inverse_difference(X, Y, 1);
    CHECK(f + RationalFunction(Rational(0)) == f);
    CHECK(f * RationalFunction::from_laurent(mono({1}) - mono({0, 1})) == RationalFunction(Rational(1)));
    CHECK((f + RationalFunction::inverse_difference(Y, X, 1)).is_zero());
    CHECK(RationalFunction::inverse_difference(Y, X, 2) == RationalFunction::inverse_difference(X, Y, 2));
    CHECK_THROWS(RationalFunction::inverse_difference(X, X, 1));
    // 1/(x-y) - 1/x = y / (x (x-y))
    RationalFunction g = f - RationalFunction::power_of(X, -1);
    CHECK(g == RationalFunction::from_laurent(mono({-1, 1})) * f);
    CHECK(g.render({"x", "y"}) == "(y) / (x - y) * x");
    CHECK(RationalFunction().render({"x"}) == "0");
}

TEST_CASE("renaming collapses and normalizes") {
    // 1/(x-z) * (x-y) with y -> z becomes 1
    RationalFunction f = RationalFunction::inverse_difference(X, Z, 1) *
                         RationalFunction::from_laurent(mono({1}) - mono({0, 1}));
    CHECK(f.renamed([](Var v) { return v == Y ? Z : v; }) == RationalFunction(Rational(1)));
    CHECK_THROWS_AS(RationalFunction::inverse_difference(X, Y, 1).renamed([](Var) { return X; }), std::domain_error);
}

TEST_CASE("region expansion examples") {
    RegionExpansion e = rf_expand_region(RationalFunction::inverse_difference(X, Y, 1), {X, Y}, Box{{-3, 0}, {-1, 2}});
    for (int a = -3; a <= -1; ++a)
        for (int b = 0; b <= 2; ++b) CHECK(e.coefficient({a, b}) == Rational(a + b == -1 ? 1 : 0));
    CHECK_THROWS_AS(e.coefficient({0, 0}), std::out_of_range);

    RegionExpansion c = rf_expand_region(RationalFunction(Rational(5)), {X, Y}, Box::uniform(2, 0, 0));
    CHECK(c.coefficient({0, 0}) == Rational(5));

    // 1/((z1-z2)(z2-z3)) against the product of two truncated iota series.
    const Box box = Box::uniform(3, -5, 3);
    RationalFunction f = RationalFunction::inverse_difference(X, Y, 1) * RationalFunction::inverse_difference(Y, Z, 1);
    RegionExpansion ex = rf_expand_region(f, {X, Y, Z}, box);
    const LaurentPoly prod = iota_expand(1, X, Y, 20) * iota_expand(1, Y, Z, 20);
    box.for_each([&](const std::vector<int>& e3) { CHECK(ex.coefficient(e3) == prod.coefficient(Monomial(e3))); });
}

TEST_CASE("region expansion is a ring morphism on random data") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3), pw(0, 2), ex(-1, 2);
    auto random_rf = [&] {
        LaurentPoly p;
        for (int i = 0; i < 3; ++i) p.add_term(Monomial({ex(rng), ex(rng), ex(rng)}), Rational(coef(rng)));
        RationalFunction f = RationalFunction::from_laurent(p);
        f *= RationalFunction::inverse_difference(X, Y, pw(rng));
        f *= RationalFunction::inverse_difference(Y, Z, pw(rng));
        f *= RationalFunction::inverse_difference(Z, X, pw(rng));
        return f;
    };
    const std::vector<Var> order{X, Y, Z};
    const std::vector<int> up{3, 3, 3};
    for (int trial = 0; trial < 20; ++trial) {
        const RationalFunction f = random_rf(), g = random_rf();
        const LaurentPoly ef = f.expand_bounded_above(order, up);
        const LaurentPoly eg = g.expand_bounded_above(order, up);
        LaurentPoly sum = ef;
        sum += eg;
        CHECK((f + g).expand_bounded_above(order, up) == sum);

        // Products: factors' exponents are bounded below, so truncating each at a larger
        // bound yields every product term inside the window.
        const std::vector<int> wide{30, 30, 30};
        const LaurentPoly pf = f.expand_bounded_above(order, wide) * g.expand_bounded_above(order, wide);
        const LaurentPoly efg = (f * g).expand_bounded_above(order, up);
        for (const auto& [m, c] : efg.terms()) CHECK(pf.coefficient(m) == c);
        for (const auto& [m, c] : pf.terms())
            if (m[X] <= up[0] && m[Y] <= up[1] && m[Z] <= up[2]) CHECK(efg.coefficient(m) == c);

        CHECK((f - f).is_zero());
        RationalFunction h = f;
        h += g;
        h -= g;
        CHECK(h == f);
    }
}
