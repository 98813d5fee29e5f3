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

#include "mosva/rational_function.hpp"
#include "mosva/vertex.hpp"

#include <map>
#include <span>
#include <vector>

namespace mosva {

/// Variables of two-point expressions: wick_product lives in (x, y), wick_iterate in (x0, x2)
/// with the same indices.
inline constexpr Var kX = 0;
inline constexpr Var kY = 1;

/// Sum of RationalFunction coefficients times normal-ordered products of full factors.
/// Factor lists keep the order in which they were written.
class NOExpr {
public:
    using Factors = std::vector<FieldFactor>;
    using Terms = std::map<Factors, RationalFunction>;

    void add(const Factors& fs, const RationalFunction& c);
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// Renames variables in coefficients and factors (both base and shift variables).
    NOExpr renamed(const std::function<Var(Var)>& map) const;

    NOExpr& operator+=(const NOExpr& o);
    friend bool operator==(const NOExpr&, const NOExpr&) = default;

private:
    Terms terms_;
};

/// Permutation expansion of a square determinant. Throws std::invalid_argument if not square.
RationalFunction permutation_determinant(const std::vector<std::vector<RationalFunction>>& m);

/// det[(a_i, b_j) f_{m_i n_j}(x_i, y_j)] with rows/cols given by gen, deriv and var.
/// Throws std::invalid_argument unless rows.size() == cols.size() >= 1.
RationalFunction contraction_det(const HSpace& h, std::span<const FieldFactor> rows, std::span<const FieldFactor> cols);

/// :A: :B: expanded into normal-ordered products, for factors at pairwise distinct variables.
/// Throws std::invalid_argument on a repeated variable or a non-full factor.
NOExpr wick_fuse(const HSpace& h, std::span<const FieldFactor> A, std::span<const FieldFactor> B);

/// Y(u1, x) Y(u2, y) as an NOExpr in (x, y).
NOExpr wick_product(const HSpace& h, const Word& u1, const Word& u2);
/// Y(Y(u1, x0) u2, x2) as an NOExpr whose u1-factors sit at x2 + x0 (shift x0).
NOExpr wick_iterate(const HSpace& h, const Word& u1, const Word& u2);

/// Coefficient of the empty normal-ordered product.
RationalFunction vacuum_expectation(const NOExpr& e);

struct Insertion {
    Word word;
    Var var;
};

/// <1', Y(u_1, z_1) ... Y(u_r, z_r) 1> as a rational function, folding insertions left to
/// right. Throws std::invalid_argument on duplicate variables.
RationalFunction correlation(const HSpace& h, const std::vector<Insertion>& insertions);
/// Same value, folding right to left.
RationalFunction correlation_right_fold(const HSpace& h, const std::vector<Insertion>& insertions);

/// Coefficients of the expression applied to v, expanded in the region
/// |z_{order[0]}| > |z_{order[1]}| > ...; window axes follow `order`.
/// Shifted factors h(z + s) expand in nonnegative powers of s and require coefficients
/// without difference factors (std::invalid_argument otherwise).
WindowedSeries apply_series(const HSpace& h, const NOExpr& e, const FockVector& v, const std::vector<Var>& order,
                            const Box& window);

}  // namespace mosva
