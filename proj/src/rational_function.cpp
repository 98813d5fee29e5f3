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

#include "mosva/rational_function.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mosva {
namespace {

LaurentPoly difference_power(Var i, Var j, int k) {
    LaurentPoly out;
    for (int t = 0; t <= k; ++t) {
        Monomial m;
        m.add(i, k - t);
        m.add(j, t);
        out.add_term(m, binom(k, t) * Rational(parity_sign(t)));
    }
    return out;
}

bool vanishes_on_diagonal(const LaurentPoly& p, Var i, Var j) {
    LaurentPoly sub;
    for (const auto& [m, c] : p.terms()) {
        Monomial r = m;
        const int e = r[i];
        r.set(i, 0);
        r.add(j, e);
        sub.add_term(r, c);
    }
    return sub.is_zero();
}

// Exact quotient p / (z_i - z_j); p must vanish on z_i = z_j.
LaurentPoly divide_by_difference(const LaurentPoly& p, Var i, Var j) {
    LaurentPoly q;
    for (const auto& [m, c] : p.terms()) {
        const int e = m[i];
        Monomial rest = m;
        rest.set(i, 0);
        for (int t = 0; t < e; ++t) {
            Monomial r = rest;
            r.add(i, e - 1 - t);
            r.add(j, t);
            q.add_term(r, c);
        }
    }
    return q;
}

}  // namespace

RationalFunction::RationalFunction(const Rational& c) : num_(c) {}

RationalFunction RationalFunction::from_laurent(const LaurentPoly& p) {
    RationalFunction rf;
    int nv = 0;
    for (const auto& [m, c] : p.terms()) nv = std::max(nv, m.size());
    Monomial shift;
    for (Var v = 0; v < nv; ++v) {
        const int mn = p.min_exponent(v);
        if (mn < 0) shift.set(v, -mn);
    }
    rf.num_ = p * LaurentPoly::monomial(shift);
    rf.den_mono_ = shift;
    rf.normalize();
    return rf;
}

RationalFunction RationalFunction::inverse_difference(Var i, Var j, int power) {
    if (i == j) throw std::domain_error("inverse_difference: (z - z) is not invertible");
    if (power < 0) throw std::invalid_argument("inverse_difference: negative power");
    RationalFunction rf(Rational(1));
    if (power == 0) return rf;
    if (i > j) {
        std::swap(i, j);
        rf.num_ = LaurentPoly(Rational(parity_sign(power)));
    }
    rf.den_diff_[{i, j}] = power;
    return rf;
}

RationalFunction RationalFunction::power_of(Var v, int exp) {
    return from_laurent(LaurentPoly::variable(v, exp));
}

std::set<Var> RationalFunction::variables() const {
    std::set<Var> out;
    for (const auto& [m, c] : num_.terms()) {
        for (Var v = 0; v < m.size(); ++v) {
            if (m[v] != 0) out.insert(v);
        }
    }
    for (Var v = 0; v < den_mono_.size(); ++v) {
        if (den_mono_[v] != 0) out.insert(v);
    }
    for (const auto& [k, b] : den_diff_) {
        out.insert(k.first);
        out.insert(k.second);
    }
    return out;
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_mono_ = Monomial{};
        den_diff_.clear();
        return;
    }
    Monomial cancel;
    for (Var v = 0; v < den_mono_.size(); ++v) {
        const int a = den_mono_[v];
        if (a <= 0) continue;
        const int c = std::min(a, num_.min_exponent(v));
        if (c > 0) cancel.set(v, c);
    }
    if (!cancel.is_one()) {
        Monomial inv;
        for (Var v = 0; v < cancel.size(); ++v) inv.set(v, -cancel[v]);
        num_ = num_ * LaurentPoly::monomial(inv);
        den_mono_ = den_mono_ * inv;
    }
    for (auto it = den_diff_.begin(); it != den_diff_.end();) {
        auto& [key, b] = *it;
        while (b > 0 && vanishes_on_diagonal(num_, key.first, key.second)) {
            num_ = divide_by_difference(num_, key.first, key.second);
            --b;
        }
        it = b == 0 ? den_diff_.erase(it) : std::next(it);
    }
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const int nv = std::max(den_mono_.size(), o.den_mono_.size());
    Monomial common;
    for (Var v = 0; v < nv; ++v) common.set(v, std::max(den_mono_[v], o.den_mono_[v]));
    std::map<DiffKey, int> diffs = den_diff_;
    for (const auto& [k, b] : o.den_diff_) diffs[k] = std::max(diffs[k], b);

    auto lift = [&](const RationalFunction& f) {
        Monomial m;
        for (Var v = 0; v < nv; ++v) m.set(v, common[v] - f.den_mono_[v]);
        LaurentPoly p = f.num_ * LaurentPoly::monomial(m);
        for (const auto& [k, b] : diffs) {
            auto it = f.den_diff_.find(k);
            const int missing = b - (it == f.den_diff_.end() ? 0 : it->second);
            if (missing > 0) p = p * difference_power(k.first, k.second, missing);
        }
        return p;
    };
    num_ = lift(*this) + lift(o);
    den_mono_ = common;
    den_diff_ = std::move(diffs);
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    num_ = num_ * o.num_;
    den_mono_ = den_mono_ * o.den_mono_;
    for (const auto& [k, b] : o.den_diff_) den_diff_[k] += b;
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator*=(const Rational& c) {
    num_ *= c;
    normalize();
    return *this;
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ *= Rational(-1);
    return r;
}

RationalFunction RationalFunction::renamed(const std::function<Var(Var)>& map) const {
    RationalFunction r;
    r.num_ = num_.renamed(map);
    for (Var v = 0; v < den_mono_.size(); ++v) {
        if (den_mono_[v] != 0) r.den_mono_.add(map(v), den_mono_[v]);
    }
    int sign = 1;
    for (const auto& [k, b] : den_diff_) {
        Var i = map(k.first);
        Var j = map(k.second);
        if (i == j) throw std::domain_error("renamed: difference factor collapses to zero");
        if (i > j) {
            std::swap(i, j);
            sign *= parity_sign(b);
        }
        r.den_diff_[{i, j}] += b;
    }
    r.num_ *= Rational(sign);
    r.normalize();
    return r;
}

LaurentPoly RationalFunction::expand_bounded_above(const std::vector<Var>& order,
                                                   const std::vector<int>& upper) const {
    if (order.size() != upper.size()) throw std::invalid_argument("expand: order/bound size mismatch");
    std::map<Var, int> pos;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (!pos.emplace(order[k], static_cast<int>(k)).second) {
            throw std::invalid_argument("expand: variable repeated in region order");
        }
    }
    for (Var v : variables()) {
        if (!pos.count(v)) throw std::invalid_argument("expand: variable missing from region order");
    }
    LaurentPoly out;
    if (is_zero()) return out;

    struct Factor {
        Var outer;
        Var inner;
        int power;
    };
    // Grouped by inner variable, innermost group first: each group's exponents are then
    // bounded using only already-fixed contributions.
    std::vector<std::vector<Factor>> groups(order.size());
    Monomial base;
    Rational base_sign(1);
    for (Var v = 0; v < den_mono_.size(); ++v) base.add(v, -den_mono_[v]);
    for (const auto& [k, b] : den_diff_) {
        Factor f{k.first, k.second, b};
        if (pos[k.first] > pos[k.second]) {
            std::swap(f.outer, f.inner);
            base_sign *= Rational(parity_sign(b));
        }
        base.add(f.outer, -b);
        groups[pos[f.inner]].push_back(f);
    }

    for (const auto& [nm, nc] : num_.terms()) {
        const Monomial start = nm * base;
        std::function<void(int, std::size_t, Monomial&, const Rational&, int)> rec;
        // g: group position (descending), idx: factor within group, budget: remaining sum of t.
        rec = [&](int g, std::size_t idx, Monomial& cur, const Rational& coeff, int budget) {
            if (g < 0) {
                for (std::size_t k = 0; k < order.size(); ++k) {
                    if (cur[order[k]] > upper[k]) return;
                }
                out.add_term(cur, coeff);
                return;
            }
            const auto& grp = groups[g];
            if (idx == 0 && budget == -1) {
                budget = upper[g] - cur[order[g]];
                if (budget < 0) return;
            }
            if (idx == grp.size()) {
                rec(g - 1, 0, cur, coeff, -1);
                return;
            }
            const Factor& f = grp[idx];
            for (int t = 0; t <= budget; ++t) {
                cur.add(f.inner, t);
                cur.add(f.outer, -t);
                rec(g, idx + 1, cur, coeff * binom(f.power + t - 1, t), budget - t);
                cur.add(f.inner, -t);
                cur.add(f.outer, t);
            }
        };
        Monomial cur = start;
        rec(static_cast<int>(order.size()) - 1, 0, cur, nc * base_sign, -1);
    }
    return out;
}

std::string RationalFunction::render(const std::vector<std::string>& names) const {
    if (is_zero()) return "0";
    auto name = [&](Var v) { return v < static_cast<Var>(names.size()) ? names[v] : "v" + std::to_string(v); };
    std::ostringstream os;
    os << "(" << num_.render(names) << ")";
    std::vector<std::string> factors;
    for (const auto& [k, b] : den_diff_) {
        std::string f = "(" + name(k.first) + " - " + name(k.second) + ")";
        if (b != 1) f += "^" + std::to_string(b);
        factors.push_back(f);
    }
    for (Var v = 0; v < den_mono_.size(); ++v) {
        if (den_mono_[v] == 0) continue;
        std::string f = name(v);
        if (den_mono_[v] != 1) f += "^" + std::to_string(den_mono_[v]);
        factors.push_back(f);
    }
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i == 0 ? " / " : " * ") << factors[i];
    return os.str();
}

RationalFunction f_mn(int m, int n, Var x, Var y) {
    return RationalFunction::inverse_difference(x, y, m + n + 1) * binom(-n - 1, m);
}

Box Box::uniform(std::size_t dims, int lo, int hi) {
    return Box{std::vector<int>(dims, lo), std::vector<int>(dims, hi)};
}

bool Box::contains(const std::vector<int>& e) const {
    if (e.size() != lo.size()) return false;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] < lo[k] || e[k] > hi[k]) return false;
    }
    return true;
}

void Box::validate() const {
    if (lo.size() != hi.size()) throw std::invalid_argument("window: bound dimension mismatch");
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (lo[k] > hi[k]) throw std::invalid_argument("window: empty interval");
    }
}

void Box::for_each(const std::function<void(const std::vector<int>&)>& f) const {
    validate();
    std::vector<int> e = lo;
    if (e.empty()) {
        f(e);
        return;
    }
    while (true) {
        f(e);
        int k = static_cast<int>(e.size()) - 1;
        while (k >= 0 && e[k] == hi[k]) {
            e[k] = lo[k];
            --k;
        }
        if (k < 0) return;
        ++e[k];
    }
}

Rational RegionExpansion::coefficient(const std::vector<int>& exps) const {
    if (!window.contains(exps)) throw std::out_of_range("coefficient requested outside the certified window");
    Monomial m;
    for (std::size_t k = 0; k < order.size(); ++k) m.add(order[k], exps[k]);
    return coefficients.coefficient(m);
}

RegionExpansion rf_expand_region(const RationalFunction& rf, const std::vector<Var>& order, const Box& window) {
    window.validate();
    if (window.dims() != order.size()) throw std::invalid_argument("window dimension differs from region order");
    LaurentPoly all = rf.expand_bounded_above(order, window.hi);
    LaurentPoly kept;
    for (const auto& [m, c] : all.terms()) {
        std::vector<int> e(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) e[k] = m[order[k]];
        if (window.contains(e)) kept.add_term(m, c);
    }
    return RegionExpansion{order, window, std::move(kept)};
}

}  // namespace mosva
