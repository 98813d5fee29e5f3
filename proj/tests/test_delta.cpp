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

#include "mosva/verify.hpp"

using namespace mosva;

namespace {

const HSpace H1(1), H2(2);
constexpr Gen E1 = 0, F1 = 1;

void check_suite(const SuiteReport& rep) {
    for (const CheckOutcome& c : rep.checks) {
        INFO(c.name << ": " << c.counterexample);
        CHECK(c.passed);
        CHECK(c.cases > 0);
    }
}

ExponentMap single(int e, const FockVector& v) { return ExponentMap{{e, v}}; }

DeltaCoeffs random_coeffs(Rng& rng, int max_index) {
    DeltaCoeffs C;
    for (int m = 0; m <= max_index; ++m)
        for (int n = m + 1; n <= max_index; ++n)
            if (uniform_int(rng, 0, 3)) C.set(m, n, random_coefficient(rng));
    return C;
}

}  // namespace

TEST_CASE("DeltaCoeffs") {
    const DeltaCoeffs C = DeltaCoeffs::default_fixture();
    CHECK(C(0, 1) == Rational(1));
    CHECK(C(1, 0) == Rational(-1));
    CHECK(C(0, 0).is_zero());
    CHECK(C(2, 5).is_zero());
    CHECK(C.entries().size() == 2);

    const DeltaCoeffs D = DeltaCoeffs::from_entries({{0, 2, Rational(3)}, {2, 0, Rational(-3)}, {1, 3, Rational(1, 2)}});
    CHECK(D(2, 0) == Rational(-3));
    CHECK(D(3, 1) == Rational(-1, 2));
    CHECK_THROWS_AS(DeltaCoeffs::from_entries({{0, 1, Rational(1)}, {1, 0, Rational(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(DeltaCoeffs::from_entries({{0, 1, Rational(1)}, {0, 1, Rational(2)}}), std::invalid_argument);
    CHECK_THROWS_AS(DeltaCoeffs::from_entries({{2, 2, Rational(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(DeltaCoeffs::from_entries({{-1, 2, Rational(1)}}), std::invalid_argument);

    DeltaCoeffs E = C;
    E.set(1, 0, Rational(0));
    CHECK(E.is_zero());
}

TEST_CASE("delta_apply examples") {
    const DeltaCoeffs C = DeltaCoeffs::default_fixture();
    CHECK(delta_apply(H1, C, Word()).empty());
    CHECK(delta_apply(H1, C, Word({creation(E1, 0)})).empty());

    // -C_{01} (e1, f1) x^{-2}
    const Word ef({creation(E1, 0), creation(F1, 1)});
    CHECK(delta_apply(H1, C, ef) == single(-2, -FockVector::vacuum()));
    // isotropic pair: (e1, e1) = 0
    CHECK(delta_apply(H1, C, Word({creation(E1, 0), creation(E1, 1)})).empty());
    // C_{00} = 0
    CHECK(delta_apply(H1, C, Word({creation(E1, 0), creation(F1, 0)})).empty());

    // e1(-1/2) f1(-3/2) e1(-3/2) f1(-1/2): only the pairs (1,2) and (3,4) contribute
    const Word w4({creation(E1, 0), creation(F1, 1), creation(E1, 1), creation(F1, 0)});
    const ExponentMap d = delta_apply(H1, C, w4);
    const FockVector expect = -FockVector::basis(Word({creation(E1, 1), creation(F1, 0)})) -
                              FockVector::basis(Word({creation(E1, 0), creation(F1, 1)})) * Rational(-1);
    CHECK(d == single(-2, expect));
    CHECK(d == delta_by_modes(H1, C, default_polarized_basis(H1), FockVector::basis(w4)));
}

TEST_CASE("delta_apply agrees with the mode definition on length-4 words") {
    Rng rng(5);
    const DeltaCoeffs C = random_coeffs(rng, 2);
    const PolarizedBasis b = default_polarized_basis(H2);
    for (int t = 0; t < 30; ++t) {
        const Word w = random_word_of_length(H2, 4, 2, rng);
        const ExponentMap d = delta_apply(H2, C, w);
        std::size_t pairs = 0;
        for (const auto& [e, v] : d) pairs += v.size();
        CHECK(pairs <= 6);
        CHECK(d == delta_by_modes(H2, C, b, FockVector::basis(w)));
    }
}

TEST_CASE("delta_apply is independent of the polarized basis") {
    // e'_i = sum_k A_ik e_k, f'_j = sum_l (A^{-T})_jl f_l keeps (e'_i, f'_j) = delta_ij
    const Rational z(0), o(1);
    PolarizedBasis shear;
    shear.e = {{o, Rational(2), z, z}, {z, o, z, z}};
    shear.f = {{z, z, o, z}, {z, z, Rational(-2), o}};
    PolarizedBasis scaled;
    scaled.e = {{Rational(1, 3), z, z, z}, {z, z, z, o}};
    scaled.f = {{z, z, Rational(3), z}, {z, o, z, z}};  // second pair swaps e2 and f2
    PolarizedBasis bad = shear;
    bad.f[1][2] = z;
    CHECK_THROWS_AS(validate_polarized_basis(H2, bad), std::invalid_argument);

    Rng rng(21);
    for (int t = 0; t < 20; ++t) {
        const DeltaCoeffs C = random_coeffs(rng, 2);
        const FockVector v = random_state(H2, 10, 3, rng);
        const ExponentMap d = delta_apply(H2, C, v);
        CHECK(delta_by_modes(H2, C, shear, v) == d);
        CHECK(delta_by_modes(H2, C, scaled, v) == d);
    }
}

TEST_CASE("total contraction numbers") {
    // brackets <p,q> chosen freely as an antisymmetric 4 x 4 matrix
    const Rational b12(2), b13(-1), b14(3), b23(5), b24(7, 2), b34(-4);
    const std::vector<std::vector<Rational>> b{
        {Rational(0), b12, b13, b14}, {-b12, Rational(0), b23, b24}, {-b13, -b23, Rational(0), b34}, {-b14, -b24, -b34, Rational(0)}};
    const int i12[] = {1, 2}, i1234[] = {1, 2, 3, 4}, i24[] = {2, 4};
    CHECK(t_number(b, i12) == b12);
    CHECK(t_number(b, i24) == b24);
    const Rational four = b12 * b34 - b13 * b24 + b14 * b23;
    CHECK(t_number(b, i1234) == four);
    CHECK(t_number_alt(b, i1234) == four);
    CHECK(t_number_pairings(b, i1234) == four);
    CHECK(pfaffian(b) == four);
    CHECK(t_number(b, std::span<const int>{}) == Rational(1));

    const int odd[] = {1, 2, 3}, unsorted[] = {2, 1}, out_of_range[] = {1, 5};
    CHECK_THROWS_AS(t_number(b, odd), std::invalid_argument);
    CHECK_THROWS_AS(t_number_alt(b, odd), std::invalid_argument);
    CHECK_THROWS_AS(t_number_pairings(b, odd), std::invalid_argument);
    CHECK_THROWS_AS(t_number(b, unsorted), std::invalid_argument);
    CHECK_THROWS_AS(t_number(b, out_of_range), std::invalid_argument);

    const Word w({creation(E1, 0), creation(F1, 1), creation(E1, 1), creation(F1, 0)});
    CHECK(t_number(contraction_brackets(H1, DeltaCoeffs(), w), i1234).is_zero());
}

TEST_CASE("contraction number routes agree on random data") {
    Rng rng(31);
    for (int t = 0; t < 6; ++t) {
        // a random symmetric nondegenerate form on M = 1
        std::vector<std::vector<Rational>> gram;
        Rational a, c, d;
        do {
            a = Rational(uniform_int(rng, -2, 2));
            c = random_coefficient(rng);
            d = Rational(uniform_int(rng, -2, 2));
        } while (a * d - c * c == Rational(0));
        const HSpace h(1, {{a, c}, {c, d}});
        const DeltaCoeffs C = random_coeffs(rng, 3);
        DeltaSuiteOptions opt;
        opt.words = 4;
        opt.max_length = 4;
        check_suite(delta_suite(h, C, opt, rng));
    }
}

TEST_CASE("exp_delta examples") {
    const DeltaCoeffs C = DeltaCoeffs::default_fixture();
    CHECK(exp_delta(H1, C, FockVector::vacuum()) == single(0, FockVector::vacuum()));
    CHECK(exp_delta(H1, C, FockVector()).empty());
    const Word ef({creation(E1, 0), creation(F1, 1)});
    ExponentMap expect = single(0, FockVector::basis(ef));
    expect.emplace(-2, -FockVector::vacuum());
    CHECK(exp_delta(H1, C, FockVector::basis(ef)) == expect);

    // length 4 against the iterated series
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        const FockVector v = FockVector::basis(random_word_of_length(H2, 4, 1, rng));
        CHECK(exp_delta(H2, C, v) == exp_delta_iterative(H2, C, v));
    }
}

TEST_CASE("exp_delta term with t = 2") {
    // e1(-1/2) f1(-3/2) e1(-1/2) f1(-3/2): <12> = <34> = <14> = 1, <23> = -1, <13> = <24> = 0,
    // so T(1,2,3,4) = 1 - 0 - 1 = 0 and no x^{-4} term survives
    const DeltaCoeffs C = DeltaCoeffs::default_fixture();
    const Word w({creation(E1, 0), creation(F1, 1), creation(E1, 0), creation(F1, 1)});
    const ExponentMap e = exp_delta(H1, C, FockVector::basis(w));
    CHECK(e.find(-4) == e.end());
    CHECK(e == exp_delta_iterative(H1, C, FockVector::basis(w)));
}

TEST_CASE("delta suite on the default fixture") {
    Rng rng(3);
    DeltaSuiteOptions opt;
    check_suite(delta_suite(H1, DeltaCoeffs::default_fixture(), opt, rng));
    opt.max_length = 3;
    check_suite(delta_suite(H2, random_coeffs(rng, 2), opt, rng));
}

TEST_CASE("exp-delta commutator") {
    Rng rng(12);
    std::vector<FockVector> samples;
    for (int t = 0; t < 6; ++t) samples.push_back(random_state(H2, 4, 2, rng));
    const Box window = Box::uniform(2, -4, 4);
    for (Gen a = 0; a < 4; ++a) {
        CHECK(check_exp_delta_neg_comm(H2, DeltaCoeffs(), a, 1, samples, window).passed);
        const CheckOutcome o = check_exp_delta_neg_comm(H2, DeltaCoeffs::default_fixture(), a, 0, samples, window);
        CHECK(o.passed);
        CHECK(o.cases == samples.size() * 81);
    }
    CHECK_THROWS_AS(check_exp_delta_neg_comm(H2, DeltaCoeffs(), 0, -1, samples, window), std::invalid_argument);
    CHECK_THROWS_AS(check_exp_delta_neg_comm(H2, DeltaCoeffs(), 0, 0, samples, Box::uniform(1, 0, 1)), std::invalid_argument);
}

TEST_CASE("pfaffian") {
    CHECK(pfaffian({}) == Rational(1));
    CHECK(pfaffian({{Rational(0), Rational(3)}, {Rational(-3), Rational(0)}}) == Rational(3));
    // zero first row beyond pivot search
    const Rational z(0), o(1);
    CHECK(pfaffian({{z, z, o, z}, {z, z, z, o}, {-o, z, z, z}, {z, -o, z, z}}) == Rational(-1));
    CHECK_THROWS_AS(pfaffian({{z}}), std::invalid_argument);
}
