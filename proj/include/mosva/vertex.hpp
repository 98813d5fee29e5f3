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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mosva {

/// A 2-shuffle of {1..r}: increasing `first` (length eta) followed by its increasing
/// complement `second`; `sign` is the parity of that permutation.
struct Shuffle {
    int eta = 0;
    std::vector<int> first;
    std::vector<int> second;
    int sign = 1;
};

/// All C(r, eta) shuffles, in lexicographic order of `first`.
std::vector<Shuffle> enumerate_shuffles(int r, int eta);

struct NormalOrdering {
    int sign = 1;
    std::vector<Mode> modes;
};

/// Moves creation modes left of annihilation modes, keeping both internal orders.
NormalOrdering normal_order_modes(std::span<const Mode> ms);

/// Which modes of a generating series are kept: all, annihilation only (+), creation only (-).
enum class Part { full, plus, minus };

inline constexpr Var kNoShift = -1;

/// h_gen^{(deriv)}(z) = sum_n binom(-n-1, deriv) h_gen(n+1/2) z^{-n-deriv-1}, restricted to
/// `part`, at z = var, or at z = var + shift when shift != kNoShift.
struct FieldFactor {
    Gen gen = 0;
    int deriv = 0;
    Var var = 0;
    Part part = Part::full;
    Var shift = kNoShift;

    friend bool operator==(const FieldFactor&, const FieldFactor&) = default;
    friend auto operator<=>(const FieldFactor&, const FieldFactor&) = default;
};

/// Factors h_i^{(m_i)}(z) of Y(w, z) for a word w = h_1(-m_1-1/2) ... h_r(-m_r-1/2) 1.
std::vector<FieldFactor> word_factors(const Word& w, Var z);

/// Exact coefficient of prod_v z_v^{target[v]} in :F_1 ... F_r: v. Factors must be unshifted.
/// Variables absent from the factors must have exponent 0 in `target`.
FockVector normal_ordered_coefficient(const HSpace& h, std::span<const FieldFactor> factors, const Monomial& target,
                                      const FockVector& v);

/// Coefficients of every monomial in the box, whose axes are the variables 0, 1, ...; zero
/// coefficients are omitted. Variables absent from the factors only contribute exponent 0.
std::map<std::vector<int>, FockVector> normal_ordered_window(const HSpace& h, std::span<const FieldFactor> factors,
                                                             const Box& box, const FockVector& v);

/// Coefficients of sum_j coeffs[j] :members[j]: v over the box. Members must agree in
/// generators, variables and parts, differ only in derivative orders, and have equal total
/// order per variable; they then share one traversal.
std::map<std::vector<int>, FockVector> normal_ordered_combination_window(const HSpace& h,
                                                                         std::span<const std::vector<FieldFactor>> members,
                                                                         std::span<const Rational> coeffs, const Box& box,
                                                                         const FockVector& v);

/// Exponents of z below this bound have zero coefficient in :F_1 ... F_r: v whenever every
/// word of v has doubled weight <= v_weight2.
int normal_ordered_lower_bound(std::span<const FieldFactor> factors, Var z, int v_weight2);

/// Coefficient of x^k in Y(u, x) v.
FockVector y_coeff(const HSpace& h, const FockVector& u, int k, const FockVector& v);
/// Nonzero coefficients of x^k in Y(u, x) v for lo <= k <= hi.
std::map<int, FockVector> y_coeffs(const HSpace& h, const FockVector& u, int lo, int hi, const FockVector& v);

/// Exponent-indexed coefficients, exact on `window`. Zero coefficients are not stored.
struct WindowedSeries {
    Box window;
    std::map<std::vector<int>, FockVector> coefficients;

    /// Throws std::out_of_range outside the window.
    FockVector at(const std::vector<int>& exps) const;
};

WindowedSeries y_series(const HSpace& h, const FockVector& u, const FockVector& v, const Box& window);
/// Coefficients of x^{k1} y^{k2} in Y(u1, x) Y(u2, y) v.
WindowedSeries product_series(const HSpace& h, const FockVector& u1, const FockVector& u2, const FockVector& v,
                              const Box& window);
/// Coefficients of z_1^{k_1} ... z_r^{k_r} in Y(u_1, z_1) ... Y(u_r, z_r) v.
WindowedSeries multi_product_series(const HSpace& h, const std::vector<FockVector>& us, const FockVector& v,
                                    const Box& window);
/// Coefficients of x0^{k1} x2^{k2} in Y(Y(u1, x0) u2, x2) v.
WindowedSeries iterate_series(const HSpace& h, const FockVector& u1, const FockVector& u2, const FockVector& v,
                              const Box& window);

struct WeakAssociativityReport {
    enum class Status { equal, mismatch, inconclusive };
    Status status = Status::inconclusive;
    int P = 0;
    std::optional<std::vector<int>> first_mismatch;
    FockVector product_side;  // at first_mismatch
    FockVector iterate_side;  // at first_mismatch
};

std::string to_string(WeakAssociativityReport::Status s);

/// Compares (x0+x2)^P Y(u1, x0+x2) Y(u2, x2) w with (x0+x2)^P Y(Y(u1, x0) u2, x2) w on the
/// window, where P = ceil(wt(w)) + m_1 + ... + m_r + r and binomials expand in nonnegative
/// powers of x2. Inconclusive means both sides vanish on the whole window.
/// `pole_order` replaces P when given.
WeakAssociativityReport check_weak_associativity(const HSpace& h, const Word& u1, const Word& u2,
                                                 const FockVector& w, const Box& window,
                                                 std::optional<int> pole_order = std::nullopt);

struct CheckOutcome {
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    std::string counterexample;
};

struct AxiomReport {
    std::vector<CheckOutcome> checks;
    bool passed() const;
};

/// Identity, creation, grading-commutator, D-derivative, D-commutator, D as the x^1
/// coefficient of Y(v, x)1, lower truncation and weight homogeneity, coefficientwise for
/// exponents lo..hi. Two-state checks use consecutive sample pairs (s_i, s_{i+1}).
AxiomReport check_axioms(const HSpace& h, const std::vector<FockVector>& samples, int lo, int hi);

}  // namespace mosva
