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

#include "mosva/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mosva {

Monomial::Monomial(std::vector<int> exps) : exps_(std::move(exps)) { trim(); }

Monomial Monomial::single(Var v, int exp) {
    Monomial m;
    m.set(v, exp);
    return m;
}

void Monomial::set(Var v, int exp) {
    if (v < 0) throw std::out_of_range("Monomial: negative variable index");
    if (v >= size()) {
        if (exp == 0) return;
        exps_.resize(v + 1, 0);
    }
    exps_[v] = exp;
    trim();
}

void Monomial::trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<int> e(std::max(a.exps_.size(), b.exps_.size()), 0);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[static_cast<Var>(i)] + b[static_cast<Var>(i)];
    return Monomial(std::move(e));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    const int n = std::max(a.size(), b.size());
    for (Var v = 0; v < n; ++v) {
        if (auto c = a[v] <=> b[v]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

LaurentPoly::LaurentPoly(const Rational& c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

LaurentPoly LaurentPoly::monomial(const Monomial& m, const Rational& c) {
    LaurentPoly p;
    p.add_term(m, c);
    return p;
}

LaurentPoly LaurentPoly::variable(Var v, int exp) { return monomial(Monomial::single(v, exp)); }

void LaurentPoly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rational LaurentPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

int LaurentPoly::min_exponent(Var v) const {
    if (terms_.empty()) return 0;
    int r = terms_.begin()->first[v];
    for (const auto& [m, c] : terms_) r = std::min(r, m[v]);
    return r;
}

int LaurentPoly::max_exponent(Var v) const {
    if (terms_.empty()) return 0;
    int r = terms_.begin()->first[v];
    for (const auto& [m, c] : terms_) r = std::max(r, m[v]);
    return r;
}

LaurentPoly LaurentPoly::divided_derivative(Var v, int k) const {
    LaurentPoly out;
    for (const auto& [m, c] : terms_) {
        Monomial d = m;
        d.set(v, m[v] - k);
        out.add_term(d, c * binom(m[v], k));
    }
    return out;
}

LaurentPoly LaurentPoly::renamed(const std::function<Var(Var)>& map) const {
    LaurentPoly out;
    for (const auto& [m, c] : terms_) {
        Monomial r;
        for (Var v = 0; v < m.size(); ++v) {
            if (m[v] != 0) r.add(map(v), m[v]);
        }
        out.add_term(r, c);
    }
    return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
}

std::string LaurentPoly::render(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest monomial first reads more naturally.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational mag = c.sign() < 0 ? -c : c;
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (!mag.is_one() || m.is_one()) {
            os << mag;
            wrote = true;
        }
        for (Var v = 0; v < m.size(); ++v) {
            if (m[v] == 0) continue;
            if (wrote) os << "*";
            os << (v < static_cast<Var>(names.size()) ? names[v] : "v" + std::to_string(v));
            if (m[v] != 1) os << "^" << m[v];
            wrote = true;
        }
    }
    return os.str();
}

LaurentPoly iota_expand(int t, Var x, Var y, int max_inner_degree) {
    if (t < 1) throw std::invalid_argument("iota_expand: pole order must be >= 1");
    LaurentPoly out;
    for (int i = 0; i <= max_inner_degree; ++i) {
        Monomial m;
        m.add(x, -t - i);
        m.add(y, i);
        out.add_term(m, binom(t + i - 1, i));
    }
    return out;
}

}  // namespace mosva
