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

#pragma once

#include "mosva/fock.hpp"
#include "mosva/rational_function.hpp"
#include "mosva/vertex.hpp"

#include <map>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

namespace mosva {

/// Finitely supported antisymmetric coefficients C_{mn}, m, n >= 0.
class DeltaCoeffs {
public:
    DeltaCoeffs() = default;
    /// C_{01} = 1 = -C_{10}.
    static DeltaCoeffs default_fixture();
    /// Entries (m, n, c) with the transposes filled in. Throws std::invalid_argument on a
    /// negative index, a nonzero diagonal entry, or entries contradicting antisymmetry.
    static DeltaCoeffs from_entries(const std::vector<std::tuple<int, int, Rational>>& entries);

    /// Sets C_{mn} = c and C_{nm} = -c. Throws std::invalid_argument as for from_entries.
    void set(int m, int n, const Rational& c);
    Rational operator()(int m, int n) const;
    /// Nonzero entries with both orientations present.
    const std::map<std::pair<int, int>, Rational>& entries() const { return c_; }
    bool is_zero() const { return c_.empty(); }

private:
    std::map<std::pair<int, int>, Rational> c_;
};

/// Exponent of x -> coefficient vector; zero vectors are not stored.
using ExponentMap = std::map<int, FockVector>;

void add_into(ExponentMap& m, int exp, const FockVector& v);

/// Delta(x) w = sum_{p<q} (-1)^{p+q} C_{n_p n_q} (b_p, b_q) x^{-n_p-n_q-1} w_{without p, q}.
ExponentMap delta_apply(const HSpace& h, const DeltaCoeffs& C, const Word& w);
ExponentMap delta_apply(const HSpace& h, const DeltaCoeffs& C, const FockVector& v);

/// r x r matrix of <p, q> = (a_p, a_q) C_{m_p m_q} for the modes of w. Antisymmetric.
std::vector<std::vector<Rational>> contraction_brackets(const HSpace& h, const DeltaCoeffs& C, const Word& w);

/// Total contraction number at 1-based increasing positions i_1 < ... < i_{2t}, by the
/// expansion along i_1. Throws std::invalid_argument on an odd or non-increasing list.
Rational t_number(const std::vector<std::vector<Rational>>& bracket, std::span<const int> indices);
/// Same value by the symmetric recursion (1/t) sum_{a<b} (-1)^{a+b-1} <i_a, i_b> T(rest).
Rational t_number_alt(const std::vector<std::vector<Rational>>& bracket, std::span<const int> indices);
/// Same value as a sum over perfect matchings with a sign (-1) per crossing pair of edges.
Rational t_number_pairings(const std::vector<std::vector<Rational>>& bracket, std::span<const int> indices);

/// exp(Delta(x)) v by the closed form over even position subsets.
ExponentMap exp_delta(const HSpace& h, const DeltaCoeffs& C, const FockVector& v);

/// Checks [exp(Delta(y)), a^{(m)}(x)^-] = sum_{alpha, beta} C_{beta alpha} a(beta+1/2)
/// y^{-beta-alpha-1} (x^alpha)^{(m)} exp(Delta(y)) on each sample, for x^{k1} y^{k2} in the window.
CheckOutcome check_exp_delta_neg_comm(const HSpace& h, const DeltaCoeffs& C, Gen a, int m,
                                      const std::vector<FockVector>& samples, const Box& window);

}  // namespace mosva
