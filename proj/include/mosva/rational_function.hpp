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

#include "mosva/laurent.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace mosva {

/// Multivariate rational function whose denominator is restricted to
///   prod_i z_i^{a_i} * prod_{i<j} (z_i - z_j)^{b_ij}.
///
/// Values are kept normalized: the numerator is a polynomial that is not divisible by any
/// denominator factor, so structural equality decides equality of functions.
class RationalFunction {
public:
    using DiffKey = std::pair<Var, Var>;  // (i, j) with i < j

    RationalFunction() = default;
    RationalFunction(const Rational& c);  // NOLINT(google-explicit-constructor)
    /// Accepts negative exponents; they move into the monomial denominator.
    static RationalFunction from_laurent(const LaurentPoly& p);
    /// (z_i - z_j)^{-power}; i > j is rewritten with the canonical factor and a sign.
    static RationalFunction inverse_difference(Var i, Var j, int power);
    /// z_v^{exp}, exp of any sign.
    static RationalFunction power_of(Var v, int exp);

    bool is_zero() const { return num_.is_zero(); }
    const LaurentPoly& numerator() const { return num_; }
    const Monomial& monomial_denominator() const { return den_mono_; }
    const std::map<DiffKey, int>& difference_denominator() const { return den_diff_; }
    bool has_difference_factors() const { return !den_diff_.empty(); }
    std::set<Var> variables() const;

    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o) { return *this += -o; }
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator*=(const Rational& c);
    RationalFunction operator-() const;
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator*(RationalFunction a, const Rational& c) { return a *= c; }
    friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

    /// Variable substitution z_v -> z_{map(v)}. Throws std::domain_error if a difference
    /// factor collapses to (z - z).
    RationalFunction renamed(const std::function<Var(Var)>& map) const;

    /// All terms of the expansion in the region |z_{order[0]}| > |z_{order[1]}| > ... whose
    /// exponents are <= upper[k] in variable order[k]. The set is finite and exact.
    /// Throws std::invalid_argument if a variable of the function is missing from `order`.
    LaurentPoly expand_bounded_above(const std::vector<Var>& order, const std::vector<int>& upper) const;

    /// "(numerator) / (z1 - z2)^2 * z1" style text; "0" for zero.
    std::string render(const std::vector<std::string>& names) const;

private:
    void normalize();

    LaurentPoly num_;
    Monomial den_mono_;
    std::map<DiffKey, int> den_diff_;
};

/// binom(-n-1, m) * (x - y)^{-m-n-1}.
RationalFunction f_mn(int m, int n, Var x, Var y);

/// Integer exponent box, one closed interval per variable of a declared order.
struct Box {
    std::vector<int> lo;
    std::vector<int> hi;

    static Box uniform(std::size_t dims, int lo, int hi);
    bool contains(const std::vector<int>& e) const;
    std::size_t dims() const { return lo.size(); }
    /// Throws std::invalid_argument unless lo.size() == hi.size() and lo <= hi everywhere.
    void validate() const;
    /// Calls f on every exponent tuple of the box in lexicographic order.
    void for_each(const std::function<void(const std::vector<int>&)>& f) const;
};

/// Expansion of a rational function in a region, exact on the recorded box.
struct RegionExpansion {
    std::vector<Var> order;
    Box window;
    LaurentPoly coefficients;

    /// Coefficient at exponents given in `order`; throws std::out_of_range outside the window.
    Rational coefficient(const std::vector<int>& exps) const;
};

RegionExpansion rf_expand_region(const RationalFunction& rf, const std::vector<Var>& order, const Box& window);

}  // namespace mosva
