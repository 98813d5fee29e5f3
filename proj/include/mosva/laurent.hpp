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

#include "mosva/rational.hpp"

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mosva {

/// Index of a formal variable. Lower indices come first in the global variable order.
using Var = int;

/// Integer exponent vector over variables 0..n-1; trailing zeros are never stored.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> exps);
    static Monomial single(Var v, int exp);

    int operator[](Var v) const { return v < static_cast<Var>(exps_.size()) ? exps_[v] : 0; }
    void set(Var v, int exp);
    void add(Var v, int exp) { set(v, (*this)[v] + exp); }
    int size() const { return static_cast<int>(exps_.size()); }
    bool is_one() const { return exps_.empty(); }
    const std::vector<int>& exps() const { return exps_; }

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

private:
    void trim();
    std::vector<int> exps_;
};

/// Finite sum of rational multiples of (possibly negative-exponent) monomials.
/// Zero coefficients are never stored.
class LaurentPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    LaurentPoly() = default;
    LaurentPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
    static LaurentPoly monomial(const Monomial& m, const Rational& c = Rational(1));
    static LaurentPoly variable(Var v, int exp = 1);

    void add_term(const Monomial& m, const Rational& c);
    Rational coefficient(const Monomial& m) const;
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    /// Smallest exponent of v over all terms; 0 for the zero polynomial.
    int min_exponent(Var v) const;
    int max_exponent(Var v) const;

    /// (1/k!) d^k/dv^k, applied termwise.
    LaurentPoly divided_derivative(Var v, int k) const;
    /// Renames variables; `map[v]` is the new index for v.
    LaurentPoly renamed(const std::function<Var(Var)>& map) const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const Rational& c);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

    /// Canonical text such as "3*z1^2*z2 - 1/2*z3^-1"; `names[v]` names variable v.
    std::string render(const std::vector<std::string>& names) const;

private:
    Terms terms_;
};

/// (x - y)^{-t} expanded in nonnegative powers of y, keeping y-degrees 0..max_inner_degree:
/// sum_i binom(t+i-1, i) x^{-t-i} y^i. Requires t >= 1.
LaurentPoly iota_expand(int t, Var x, Var y, int max_inner_degree);

}  // namespace mosva
