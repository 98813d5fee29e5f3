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

#include "mosva/fock.hpp"
#include "mosva/pbw.hpp"
#include "mosva/sampling.hpp"

using namespace mosva;

namespace {

const HSpace H2(2);
constexpr Gen E1 = 0, E2 = 1, F1 = 2, F2 = 3;

FockVector state(std::vector<Mode> ms) { return FockVector::basis(Word(std::move(ms))); }

}  // namespace

TEST_CASE("pairing") {
    CHECK(H2.pair(E1, F1) == Rational(1));
    CHECK(H2.pair(E1, E2) == Rational(0));
    CHECK(H2.pair(F2, E2) == Rational(1));
    CHECK(H2.is_default_polarized());
    for (Gen a = 0; a < 4; ++a)
        for (Gen b = 0; b < 4; ++b) CHECK(H2.pair(a, b) == H2.pair(b, a));
    CHECK_THROWS_AS(H2.pair(0, 4), std::out_of_range);
    CHECK_THROWS_AS(H2.pair(-1, 0), std::out_of_range);
}

TEST_CASE("Gram validation") {
    using R = Rational;
    CHECK_NOTHROW(HSpace(1, {{R(2), R(1, 2)}, {R(1, 2), R(0)}}));
    CHECK_THROWS_AS(HSpace(1, {{R(0), R(1)}, {R(2), R(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(HSpace(1, {{R(1), R(1)}, {R(1), R(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(HSpace(1, {{R(1)}}), std::invalid_argument);
    CHECK_FALSE(HSpace(1, {{R(1), R(0)}, {R(0), R(1)}}).is_default_polarized());
}

TEST_CASE("generator names") {
    CHECK(H2.gen_name(E1) == "e1");
    CHECK(H2.gen_name(F2) == "f2");
    CHECK(H2.parse_gen("f1") == F1);
    CHECK_FALSE(H2.parse_gen("e3").has_value());
    CHECK_FALSE(H2.parse_gen("e0").has_value());
    CHECK_FALSE(H2.parse_gen("g1").has_value());
}

TEST_CASE("empty h") {
    const HSpace h0(0);
    CHECK(h0.dim() == 0);
    CHECK(words_up_to_weight(h0, 6).size() == 1);
}

TEST_CASE("apply_mode examples") {
    CHECK(apply_mode(H2, annihilation(E1, 0), state({creation(F1, 0)})) == FockVector::vacuum());
    CHECK(apply_mode(H2, annihilation(E1, 0), FockVector::vacuum()).is_zero());
    CHECK(apply_mode(H2, creation(E1, 0), state({creation(E1, 0)})) == state({creation(E1, 0), creation(E1, 0)}));
    CHECK(apply_mode(H2, annihilation(E1, 0), state({creation(F1, 0), creation(F1, 0)})).is_zero());
    // e1(3/2) f2(-1/2) f1(-3/2) 1 = -(e1, f1) f2(-1/2) 1
    CHECK(apply_mode(H2, annihilation(E1, 1), state({creation(F2, 0), creation(F1, 1)})) == -state({creation(F2, 0)}));
}

TEST_CASE("apply_modes examples") {
    Rng rng(11);
    const FockVector v = random_state(H2, 4, 3, rng);
    CHECK(apply_modes(H2, {}, v) == v);
    for (Gen a = 0; a < 4; ++a) {
        for (Gen b = 0; b < 4; ++b) {
            const Mode ms[] = {annihilation(a, 0), creation(b, 0)};
            CHECK(apply_modes(H2, ms, FockVector::vacuum()) == FockVector::vacuum() * H2.pair(a, b));
        }
    }
    for (int t = 0; t < 20; ++t) {
        std::vector<Mode> ms;
        for (int i = 0; i < 4; ++i) ms.push_back(Mode{uniform_int(rng, 0, 3), uniform_int(rng, -2, 1)});
        FockVector fold = v;
        for (int i = 3; i >= 0; --i) fold = apply_mode(H2, ms[i], fold);
        CHECK(apply_modes(H2, ms, v) == fold);
    }
}

TEST_CASE("weights, parity, theta") {
    CHECK(Word().weight2() == 0);
    CHECK(weight(Word({creation(E1, 0)})) == Rational(1, 2));
    CHECK(weight(Word({creation(E1, 1), creation(F1, 0)})) == Rational(2));
    CHECK(theta(FockVector::vacuum()) == FockVector::vacuum());
    CHECK(theta(state({creation(E1, 0)})) == -state({creation(E1, 0)}));
    CHECK_THROWS_AS(Word({annihilation(E1, 0)}), std::invalid_argument);
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const FockVector v = random_state(H2, 6, 4, rng);
        CHECK(theta(theta(v)) == v);
    }
}

TEST_CASE("D and grading examples") {
    CHECK(d_op(FockVector::vacuum()).is_zero());
    CHECK(d_op(state({creation(E1, 0)})) == state({creation(E1, 1)}));
    CHECK(d_op(state({creation(E1, 0), creation(F1, 0)})) ==
          state({creation(E1, 1), creation(F1, 0)}) + state({creation(E1, 0), creation(F1, 1)}));
    CHECK(d_op(state({creation(E2, 2)})) == state({creation(E2, 3)}) * Rational(3));
    CHECK(grading_op(FockVector::vacuum()).is_zero());
    CHECK(grading_op(state({creation(E1, 0)})) == state({creation(E1, 0)}) * Rational(1, 2));
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        const FockVector u = random_state(H2, 5, 3, rng), v = random_state(H2, 5, 3, rng);
        const Rational c = random_coefficient(rng);
        CHECK(grading_op(u + v * c) == grading_op(u) + grading_op(v) * c);
        CHECK(d_op(u + v * c) == d_op(u) + d_op(v) * c);
    }
}

TEST_CASE("operator identities on random states") {
    Rng rng(2024);
    for (int t = 0; t < 40; ++t) {
        const FockVector v = random_state(H2, 8, 4, rng);
        const Gen a = uniform_int(rng, 0, 3), b = uniform_int(rng, 0, 3);
        const int m = uniform_int(rng, 0, 2), n = uniform_int(rng, 0, 2);

        const Mode ab[] = {annihilation(a, m), annihilation(b, n)};
        const Mode ba[] = {annihilation(b, n), annihilation(a, m)};
        CHECK((apply_modes(H2, ab, v) + apply_modes(H2, ba, v)).is_zero());

        const Mode mixed1[] = {annihilation(a, m), creation(b, n)};
        const Mode mixed2[] = {creation(b, n), annihilation(a, m)};
        const Rational delta = m == n ? H2.pair(a, b) : Rational(0);
        CHECK(apply_modes(H2, mixed1, v) + apply_modes(H2, mixed2, v) == v * delta);

        // [D, h(k+1/2)] = -k h(k-1/2) for every level k
        const int k = uniform_int(rng, -3, 3);
        const FockVector lhs = d_op(apply_mode(H2, Mode{a, k}, v)) - apply_mode(H2, Mode{a, k}, d_op(v));
        CHECK(lhs == apply_mode(H2, Mode{a, k - 1}, v) * Rational(-k));

        // weight additivity and theta anticommuting with modes
        for (const auto& [w, c] : v.terms()) {
            const FockVector image = apply_mode(H2, Mode{a, k}, FockVector::basis(w));
            for (const auto& [w2, c2] : image.terms())
                CHECK(w2.weight2() == w.weight2() + Mode{a, k}.weight2());
        }
        CHECK(theta(apply_mode(H2, Mode{a, k}, v)) == -apply_mode(H2, Mode{a, k}, theta(v)));
    }
}

TEST_CASE("word enumeration and rendering") {
    const HSpace h1(1);
    // weight2 <= 3 over two generators: 1 + 4 + 4 + 8
    CHECK(words_up_to_weight(h1, 3).size() == 17);
    const auto ws = words_up_to_weight(H2, 4);
    CHECK(std::is_sorted(ws.begin(), ws.end()));
    for (const Word& w : ws) CHECK(w.weight2() <= 4);

    FockVector v = state({creation(E1, 0), creation(F1, 1)}) * Rational(2, 3);
    v.add_term(Word(), Rational(-1));
    CHECK(render(H2, v) == "-|0> + 2/3 * e1(-1/2) f1(-3/2) |0>");
    CHECK(render(H2, FockVector()) == "0");
}

TEST_CASE("pbw rules") {
    const TensorEntry k = TensorEntry::k();
    const TensorEntry a = TensorEntry::of(annihilation(E1, 0));
    TensorCombination r = pbw_normal_form(H2, {a, k});
    CHECK(r.size() == 1);
    CHECK(r.at({a, k}) == Rational(1));
    r = pbw_normal_form(H2, {k, a});
    CHECK(r.size() == 1);
    CHECK(r.at({a, k}) == Rational(1));

    const TensorWord ok{TensorEntry::of(creation(F1, 1)), a, k, k};
    CHECK(defect(ok) == 0);
    CHECK(pbw_normal_form(H2, ok) == TensorCombination{{ok, Rational(1)}});

    for (int m = 0; m <= 3; ++m) {
        const TensorEntry p = TensorEntry::of(annihilation(E1, m)), q = TensorEntry::of(creation(F1, m));
        TensorCombination expect{{{q, p}, Rational(-1)}};
        if (m != 0) expect[{k}] = Rational(m);
        CHECK(pbw_normal_form(H2, {p, q}) == expect);
    }
    CHECK_THROWS_AS(pbw_rewrite(H2, ok, 0), std::invalid_argument);
}

TEST_CASE("pbw defect and confluence") {
    Rng rng(99);
    for (int t = 0; t < 200; ++t) {
        const TensorWord w = random_tensor_word(H2, 4, rng);
        int naive = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            for (std::size_t j = i + 1; j < w.size(); ++j) {
                const bool pos_neg = !w[i].central && !w[j].central && w[i].mode.level >= 0 && w[j].mode.level < 0;
                naive += (pos_neg || (w[i].central && !w[j].central)) ? 1 : 0;
            }
        }
        CHECK(defect(w) == naive);

        const TensorCombination left = pbw_normal_form(H2, w);
        const TensorCombination right = pbw_normal_form(
            H2, w, [](const TensorWord&, const std::vector<std::size_t>& c) { return c.back(); });
        CHECK(left == right);
        CHECK(pbw_normal_form(H2, w, random_strategy(static_cast<std::uint64_t>(t))) == left);
        for (const auto& [nw, c] : left) CHECK(defect(nw) == 0);
    }
}
