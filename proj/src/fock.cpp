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

#include "mosva/fock.hpp"

#include <algorithm>
#include <stdexcept>

namespace mosva {

namespace {

// Exact rank test by Gaussian elimination over Q.
bool nonsingular(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) return false;
        std::swap(a[p], a[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c].is_zero()) continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] = a[r][k] - f * a[c][k];
        }
    }
    return true;
}

std::vector<std::vector<Rational>> polarized(int M) {
    std::vector<std::vector<Rational>> g(2 * M, std::vector<Rational>(2 * M));
    for (int i = 0; i < M; ++i) {
        g[i][M + i] = Rational(1);
        g[M + i][i] = Rational(1);
    }
    return g;
}

}  // namespace

HSpace::HSpace(int M) : HSpace(M, polarized(M >= 0 ? M : 0)) {}

HSpace::HSpace(int M, std::vector<std::vector<Rational>> gram) : M_(M), gram_(std::move(gram)) {
    if (M < 0) throw std::invalid_argument("HSpace: M must be nonnegative");
    const std::size_t n = 2 * static_cast<std::size_t>(M);
    if (gram_.size() != n) throw std::invalid_argument("HSpace: Gram matrix must be 2M x 2M");
    for (const auto& row : gram_)
        if (row.size() != n) throw std::invalid_argument("HSpace: Gram matrix must be 2M x 2M");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram_[i][j] != gram_[j][i]) throw std::invalid_argument("HSpace: Gram matrix is not symmetric");
    if (!nonsingular(gram_)) throw std::invalid_argument("HSpace: Gram matrix is degenerate");
}

const Rational& HSpace::pair(Gen a, Gen b) const {
    if (a < 0 || b < 0 || a >= dim() || b >= dim()) throw std::out_of_range("HSpace::pair: generator index out of range");
    return gram_[a][b];
}

bool HSpace::is_default_polarized() const { return gram_ == polarized(M_); }

std::string HSpace::gen_name(Gen g) const {
    if (g < 0 || g >= dim()) throw std::out_of_range("HSpace::gen_name: generator index out of range");
    return g < M_ ? "e" + std::to_string(g + 1) : "f" + std::to_string(g - M_ + 1);
}

std::optional<Gen> HSpace::parse_gen(std::string_view name) const {
    if (name.size() < 2 || (name[0] != 'e' && name[0] != 'f')) return std::nullopt;
    int i = 0;
    for (char c : name.substr(1)) {
        if (c < '0' || c > '9') return std::nullopt;
        i = i * 10 + (c - '0');
        if (i > M_) return std::nullopt;
    }
    if (i < 1 || name[1] == '0') return std::nullopt;
    return name[0] == 'e' ? e(i) : f(i);
}

Word::Word(std::vector<Mode> modes) : modes_(std::move(modes)) {
    for (const Mode& m : modes_)
        if (!m.is_creation()) throw std::invalid_argument("Word: every mode must be a creation mode");
}

int Word::weight2() const {
    int w = 0;
    for (const Mode& m : modes_) w += m.weight2();
    return w;
}

Word Word::without(std::span<const std::size_t> positions) const {
    Word out;
    out.modes_.reserve(modes_.size());
    std::size_t p = 0;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (p < positions.size() && positions[p] == i) {
            ++p;
            continue;
        }
        out.modes_.push_back(modes_[i]);
    }
    return out;
}

Word Word::prepended(const Mode& m) const {
    Word out;
    out.modes_.reserve(modes_.size() + 1);
    out.modes_.push_back(m);
    out.modes_.insert(out.modes_.end(), modes_.begin(), modes_.end());
    if (!m.is_creation()) throw std::invalid_argument("Word: every mode must be a creation mode");
    return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.modes_.size() <=> b.modes_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.modes_.size(); ++i) {
        const Mode& x = a.modes_[i];
        const Mode& y = b.modes_[i];
        if (x.gen != y.gen) return x.gen <=> y.gen;
        if (x.level != y.level) return x.level <=> y.level;
    }
    return std::strong_ordering::equal;
}

FockVector FockVector::vacuum() { return basis(Word{}); }

FockVector FockVector::basis(const Word& w, const Rational& c) {
    FockVector v;
    v.add_term(w, c);
    return v;
}

void FockVector::add_term(const Word& w, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (inserted) return;
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

void FockVector::add_term(Word&& w, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.lower_bound(w);
    if (it == terms_.end() || it->first != w) {
        terms_.emplace_hint(it, std::move(w), c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Rational FockVector::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

int FockVector::max_weight2() const {
    int w = -1;
    for (const auto& [word, c] : terms_) w = std::max(w, word.weight2());
    return w;
}

bool FockVector::is_homogeneous() const {
    if (terms_.empty()) return true;
    const int w = terms_.begin()->first.weight2();
    return std::all_of(terms_.begin(), terms_.end(), [w](const auto& t) { return t.first.weight2() == w; });
}

FockVector& FockVector::operator+=(const FockVector& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

FockVector& FockVector::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, x] : terms_) x = x * c;
    return *this;
}

FockVector FockVector::operator-() const { return *this * Rational(-1); }

FockVector apply_mode(const HSpace& h, const Mode& m, const FockVector& v) {
    FockVector out;
    if (m.is_creation()) {
        for (const auto& [w, c] : v.terms()) out.add_term(w.prepended(m), c);
        return out;
    }
    // a(m+1/2) b_1 ... b_r 1 = sum_i (-1)^(i-1) (a,b_i) delta_{m,n_i} b_1 .. ^b_i .. b_r 1
    for (const auto& [w, c] : v.terms()) {
        for (std::size_t i = 0; i < w.length(); ++i) {
            const Mode& b = w[i];
            if (b.creation_index() != m.level) continue;
            const Rational& p = h.pair(m.gen, b.gen);
            if (p.is_zero()) continue;
            const std::size_t pos[1] = {i};
            out.add_term(w.without(pos), (i % 2 == 0 ? c : -c) * p);
        }
    }
    return out;
}

FockVector apply_modes(const HSpace& h, std::span<const Mode> ms, const FockVector& v) {
    FockVector out = v;
    for (auto it = ms.rbegin(); it != ms.rend() && !out.is_zero(); ++it) out = apply_mode(h, *it, out);
    return out;
}

FockVector apply_mode_combination(const HSpace& h, const std::vector<Rational>& coeffs, int level, const FockVector& v) {
    if (static_cast<int>(coeffs.size()) != h.dim())
        throw std::invalid_argument("apply_mode_combination: one coefficient per generator required");
    FockVector out;
    for (Gen g = 0; g < h.dim(); ++g)
        if (!coeffs[g].is_zero()) out += apply_mode(h, Mode{g, level}, v) * coeffs[g];
    return out;
}

Rational weight(const Word& w) { return Rational(w.weight2(), 2); }

FockVector theta(const FockVector& v) {
    FockVector out;
    for (const auto& [w, c] : v.terms()) out.add_term(w, w.parity() ? -c : c);
    return out;
}

FockVector d_op(const FockVector& v) {
    FockVector out;
    for (const auto& [w, c] : v.terms()) {
        for (std::size_t i = 0; i < w.length(); ++i) {
            std::vector<Mode> ms = w.modes();
            ms[i].level -= 1;
            out.add_term(Word(std::move(ms)), c * Rational(w[i].creation_index() + 1));
        }
    }
    return out;
}

FockVector grading_op(const FockVector& v) {
    FockVector out;
    for (const auto& [w, c] : v.terms()) out.add_term(w, c * weight(w));
    return out;
}

std::vector<Word> words_up_to_weight(const HSpace& h, int max_weight2) {
    std::vector<Word> out;
    std::vector<Mode> cur;
    auto rec = [&](auto&& self, int budget) -> void {
        out.emplace_back(cur);
        for (Gen g = 0; g < h.dim(); ++g) {
            for (int m = 0; 2 * m + 1 <= budget; ++m) {
                cur.push_back(creation(g, m));
                self(self, budget - (2 * m + 1));
                cur.pop_back();
            }
        }
    };
    if (max_weight2 >= 0) rec(rec, max_weight2);
    std::sort(out.begin(), out.end());
    return out;
}

std::string render_word(const HSpace& h, const Word& w) {
    std::string s;
    for (const Mode& m : w.modes()) {
        s += h.gen_name(m.gen);
        s += '(';
        s += std::to_string(2 * m.level + 1);
        s += "/2) ";
    }
    s += "|0>";
    return s;
}

std::string render(const HSpace& h, const FockVector& v) {
    if (v.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : v.terms()) {
        Rational a = c;
        if (!first) {
            s += a.sign() < 0 ? " - " : " + ";
            if (a.sign() < 0) a = -a;
        } else if (a.sign() < 0) {
            s += "-";
            a = -a;
        }
        first = false;
        if (!a.is_one()) s += a.to_string() + " * ";
        s += render_word(h, w);
    }
    return s;
}

}  // namespace mosva
