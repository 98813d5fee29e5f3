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

#include "mosva/wick.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>
#include <stdexcept>

namespace mosva {

namespace {

using Entry = std::function<RationalFunction(const FieldFactor&, const FieldFactor&)>;

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

RationalFunction det_rec(const std::vector<std::vector<RationalFunction>>& m, std::size_t row, std::vector<bool>& used,
                         int parity, const RationalFunction& acc) {
    if (row == m.size()) return parity ? -acc : acc;
    RationalFunction out;
    int larger_used = 0;
    for (std::size_t c = m.size(); c-- > 0;) {
        if (used[c]) {
            ++larger_used;
            continue;
        }
        if (m[row][c].is_zero()) continue;
        used[c] = true;
        out += det_rec(m, row + 1, used, parity ^ (larger_used % 2), acc * m[row][c]);
        used[c] = false;
    }
    return out;
}

// Adds c * :A: :B: to out, expanded by the contraction theorem with entries e(a_i, b_j).
// Requires the variables of A and B to be disjoint.
void fuse_into(NOExpr& out, std::span<const FieldFactor> A, std::span<const FieldFactor> B, const Entry& e,
               const RationalFunction& c) {
    const int r = static_cast<int>(A.size()), s = static_cast<int>(B.size());
    std::vector<std::vector<RationalFunction>> full(r, std::vector<RationalFunction>(s));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < s; ++j) full[i][j] = e(A[i], B[j]);
    for (int rho = 0; rho <= std::min(r, s); ++rho) {
        for_each_subset(r, rho, [&](const std::vector<int>& I) {
            for_each_subset(s, rho, [&](const std::vector<int>& J) {
                std::vector<std::vector<RationalFunction>> sub(rho, std::vector<RationalFunction>(rho));
                int index_sum = 0;
                for (int p = 0; p < rho; ++p) {
                    index_sum += I[p] + 1 + J[p] + 1;
                    for (int q = 0; q < rho; ++q) sub[p][q] = full[I[p]][J[q]];
                }
                RationalFunction d = permutation_determinant(sub);
                if (d.is_zero()) return;
                if ((index_sum + r * rho + rho * (rho + 1) / 2) % 2) d = -d;
                NOExpr::Factors fs;
                for (int i = 0, p = 0; i < r; ++i) {
                    if (p < rho && I[p] == i) {
                        ++p;
                        continue;
                    }
                    fs.push_back(A[i]);
                }
                for (int j = 0, q = 0; j < s; ++j) {
                    if (q < rho && J[q] == j) {
                        ++q;
                        continue;
                    }
                    fs.push_back(B[j]);
                }
                out.add(fs, d * c);
            });
        });
    }
}

Entry product_entry(const HSpace& h) {
    return [&h](const FieldFactor& a, const FieldFactor& b) {
        const Rational& p = h.pair(a.gen, b.gen);
        if (p.is_zero()) return RationalFunction();
        return f_mn(a.deriv, b.deriv, a.var, b.var) * p;
    };
}

void require_full(std::span<const FieldFactor> fs) {
    for (const FieldFactor& f : fs)
        if (f.part != Part::full || f.shift != kNoShift)
            throw std::invalid_argument("wick: factors must be full and unshifted");
}

RationalFunction correlation_fold(const HSpace& h, const std::vector<Insertion>& ins, bool left) {
    std::set<Var> seen;
    for (const Insertion& x : ins)
        if (!seen.insert(x.var).second) throw std::invalid_argument("correlation: duplicate variable");
    if (ins.empty()) return RationalFunction(Rational(1));
    const std::size_t r = ins.size();
    const Entry e = product_entry(h);
    // Each contraction consumes one factor on each side, so a term with more factors than
    // all remaining insertions together can never reach the empty product.
    std::vector<std::size_t> rest(r + 1, 0);
    for (std::size_t k = r; k-- > 0;) rest[k] = rest[k + 1] + ins[left ? k : r - 1 - k].word.length();
    NOExpr cur;
    const Insertion& first = ins[left ? 0 : r - 1];
    cur.add(word_factors(first.word, first.var), RationalFunction(Rational(1)));
    for (std::size_t step = 1; step < r; ++step) {
        const Insertion& next = ins[left ? step : r - 1 - step];
        const std::vector<FieldFactor> nf = word_factors(next.word, next.var);
        NOExpr out;
        for (const auto& [fs, c] : cur.terms()) {
            if (fs.size() > rest[step]) continue;
            if (left)
                fuse_into(out, fs, nf, e, c);
            else
                fuse_into(out, nf, fs, e, c);
        }
        cur = std::move(out);
    }
    return vacuum_expectation(cur);
}

}  // namespace

void NOExpr::add(const Factors& fs, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(fs, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

NOExpr NOExpr::renamed(const std::function<Var(Var)>& map) const {
    NOExpr out;
    for (const auto& [fs, c] : terms_) {
        Factors g = fs;
        for (FieldFactor& f : g) {
            f.var = map(f.var);
            if (f.shift != kNoShift) f.shift = map(f.shift);
        }
        out.add(g, c.renamed(map));
    }
    return out;
}

NOExpr& NOExpr::operator+=(const NOExpr& o) {
    for (const auto& [fs, c] : o.terms_) add(fs, c);
    return *this;
}

RationalFunction permutation_determinant(const std::vector<std::vector<RationalFunction>>& m) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw std::invalid_argument("permutation_determinant: matrix is not square");
    std::vector<bool> used(m.size(), false);
    return det_rec(m, 0, used, 0, RationalFunction(Rational(1)));
}

RationalFunction contraction_det(const HSpace& h, std::span<const FieldFactor> rows, std::span<const FieldFactor> cols) {
    if (rows.size() != cols.size() || rows.empty())
        throw std::invalid_argument("contraction_det: need a nonempty square block");
    const Entry e = product_entry(h);
    std::vector<std::vector<RationalFunction>> m(rows.size(), std::vector<RationalFunction>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m[i][j] = e(rows[i], cols[j]);
    return permutation_determinant(m);
}

NOExpr wick_fuse(const HSpace& h, std::span<const FieldFactor> A, std::span<const FieldFactor> B) {
    require_full(A);
    require_full(B);
    std::set<Var> seen;
    for (const FieldFactor& f : A)
        if (!seen.insert(f.var).second) throw std::invalid_argument("wick_fuse: repeated variable");
    for (const FieldFactor& f : B)
        if (!seen.insert(f.var).second) throw std::invalid_argument("wick_fuse: repeated variable");
    NOExpr out;
    fuse_into(out, A, B, product_entry(h), RationalFunction(Rational(1)));
    return out;
}

NOExpr wick_product(const HSpace& h, const Word& u1, const Word& u2) {
    // Fuse at generic variables x_i = 2+i, y_j = 2+r+j, then specialize syntactically.
    const Var r = static_cast<Var>(u1.length());
    std::vector<FieldFactor> A, B;
    for (Var i = 0; i < r; ++i) A.push_back(FieldFactor{u1[i].gen, u1[i].creation_index(), 2 + i});
    for (Var j = 0; j < static_cast<Var>(u2.length()); ++j)
        B.push_back(FieldFactor{u2[j].gen, u2[j].creation_index(), 2 + r + j});
    return wick_fuse(h, A, B).renamed([r](Var v) { return v < 2 + r ? kX : kY; });
}

NOExpr wick_iterate(const HSpace& h, const Word& u1, const Word& u2) {
    std::vector<FieldFactor> A = word_factors(u1, kY), B = word_factors(u2, kY);
    for (FieldFactor& f : A) f.shift = kX;
    // (a, b) (x^{-n-1})^{(m)} = (a, b) binom(-n-1, m) x^{-n-m-1}
    const Entry e = [&h](const FieldFactor& a, const FieldFactor& b) {
        const Rational& p = h.pair(a.gen, b.gen);
        if (p.is_zero()) return RationalFunction();
        return RationalFunction::power_of(kX, -b.deriv - a.deriv - 1) * (p * binom(-b.deriv - 1, a.deriv));
    };
    NOExpr out;
    fuse_into(out, A, B, e, RationalFunction(Rational(1)));
    return out;
}

RationalFunction vacuum_expectation(const NOExpr& e) {
    auto it = e.terms().find(NOExpr::Factors{});
    return it == e.terms().end() ? RationalFunction() : it->second;
}

RationalFunction correlation(const HSpace& h, const std::vector<Insertion>& insertions) {
    return correlation_fold(h, insertions, true);
}

RationalFunction correlation_right_fold(const HSpace& h, const std::vector<Insertion>& insertions) {
    return correlation_fold(h, insertions, false);
}

namespace {

class SeriesApplier {
public:
    SeriesApplier(const HSpace& h, const FockVector& v, const std::vector<Var>& order, const Box& window)
        : h_(h), v_(v), order_(order), window_(window) {
        for (Var z : order) nvars_ = std::max(nvars_, z + 1);
    }

    void add_term(const NOExpr::Factors& fs, const RationalFunction& c, WindowedSeries& out) {
        const bool shifted = std::any_of(fs.begin(), fs.end(), [](const FieldFactor& f) { return f.shift != kNoShift; });
        if (shifted)
            add_shifted(fs, c, out);
        else
            add_plain(fs, c, out);
    }

private:
    const std::map<std::vector<int>, FockVector>& no_window(const NOExpr::Factors& fs, const Box& box) {
        auto key = std::make_tuple(fs, box.lo, box.hi);
        auto it = window_cache_.find(key);
        if (it == window_cache_.end())
            it = window_cache_.emplace(std::move(key), normal_ordered_window(h_, fs, box, v_)).first;
        return it->second;
    }

    void accumulate(WindowedSeries& out, const std::vector<int>& var_exps, const FockVector& x) {
        if (x.is_zero()) return;
        std::vector<int> key(order_.size());
        for (std::size_t k = 0; k < order_.size(); ++k) key[k] = var_exps[order_[k]];
        FockVector& slot = out.coefficients[key];
        slot += x;
        if (slot.is_zero()) out.coefficients.erase(key);
    }

    void add_plain(const NOExpr::Factors& fs, const RationalFunction& c, WindowedSeries& out) {
        const std::size_t d = order_.size();
        const int w2 = v_.max_weight2();
        std::vector<int> low(d), upper(d);
        std::vector<bool> present(d, false);
        for (const FieldFactor& f : fs)
            for (std::size_t k = 0; k < d; ++k)
                if (order_[k] == f.var) present[k] = true;
        for (std::size_t k = 0; k < d; ++k) {
            low[k] = present[k] ? normal_ordered_lower_bound(fs, order_[k], w2) : 0;
            upper[k] = window_.hi[k] - low[k];
        }
        const LaurentPoly ex = c.expand_bounded_above(order_, upper);
        if (ex.terms().empty()) return;
        // One windowed evaluation covers every monomial: b ranges over [low, hi - min a].
        Box nbox{std::vector<int>(nvars_, 0), std::vector<int>(nvars_, 0)};
        for (std::size_t k = 0; k < d; ++k) {
            if (!present[k]) continue;
            int min_a = upper[k];
            for (const auto& [mono, ca] : ex.terms()) min_a = std::min(min_a, mono[order_[k]]);
            nbox.lo[order_[k]] = low[k];
            nbox.hi[order_[k]] = std::max(low[k], window_.hi[k] - min_a);
        }
        const auto& coeffs = no_window(fs, nbox);
        if (coeffs.empty()) return;
        std::vector<int> total(nvars_, 0);
        for (const auto& [mono, ca] : ex.terms()) {
            bool outside = false;
            for (std::size_t k = 0; k < d; ++k) {
                const int a = mono[order_[k]];
                if (!present[k] && (a < window_.lo[k] || a > window_.hi[k])) outside = true;
            }
            if (outside) continue;
            for (const auto& [b, x] : coeffs) {
                bool inside = true;
                for (std::size_t k = 0; k < d && inside; ++k) {
                    const Var z = order_[k];
                    total[z] = b[z] + mono[z];
                    inside = total[z] >= window_.lo[k] && total[z] <= window_.hi[k];
                }
                if (inside) accumulate(out, total, x * ca);
            }
        }
    }

    void add_shifted(const NOExpr::Factors& fs, const RationalFunction& c, WindowedSeries& out) {
        if (c.has_difference_factors())
            throw std::invalid_argument("apply_series: shifted factors need a Laurent coefficient");
        std::set<Var> shift_vars;
        for (const FieldFactor& f : fs)
            if (f.shift != kNoShift) shift_vars.insert(f.shift);
        for (const FieldFactor& f : fs)
            if (f.shift != kNoShift && shift_vars.count(f.var))
                throw std::invalid_argument("apply_series: a shift variable is also a shifted base");
        const int w2 = v_.max_weight2();
        Var dims = nvars_;
        for (const FieldFactor& f : fs) dims = std::max({dims, f.var + 1, f.shift + 1});
        std::vector<int> low(dims, 0);
        std::vector<FieldFactor> plain;
        for (const FieldFactor& f : fs)
            if (f.shift == kNoShift) plain.push_back(f);
        for (Var sv : shift_vars) low[sv] = normal_ordered_lower_bound(plain, sv, w2);
        // Window per variable; variables outside the declared order must total 0.
        std::vector<int> wlo(dims, 0), whi(dims, 0);
        for (std::size_t k = 0; k < order_.size(); ++k) {
            wlo[order_[k]] = window_.lo[k];
            whi[order_[k]] = window_.hi[k];
        }

        // Laurent expansion of the coefficient: numerator over a monomial.
        std::vector<std::pair<std::vector<int>, Rational>> lterms;
        std::vector<int> min_a(dims, std::numeric_limits<int>::max()), max_a(dims, std::numeric_limits<int>::min());
        for (const auto& [mono, ca] : c.numerator().terms()) {
            std::vector<int> e(dims, 0);
            for (Var z = 0; z < dims; ++z) {
                e[z] = mono[z] - c.monomial_denominator()[z];
                min_a[z] = std::min(min_a[z], e[z]);
                max_a[z] = std::max(max_a[z], e[z]);
            }
            lterms.emplace_back(std::move(e), ca);
        }
        if (lterms.empty()) return;
        std::vector<int> budget(dims, 0);
        for (Var sv : shift_vars) budget[sv] = whi[sv] - min_a[sv] - low[sv];
        // Distributed factor lists that differ only in derivative orders, with equal order sums
        // and equal shift powers, share one windowed evaluation.
        struct Group {
            std::vector<NOExpr::Factors> members;
            std::vector<Rational> coeffs;
        };
        std::map<std::tuple<std::vector<std::tuple<Gen, Var, Part>>, std::vector<int>, std::vector<int>>, Group> groups;
        NOExpr::Factors cur = fs;
        std::vector<int> used(dims, 0);
        distribute(cur, 0, used, budget, Rational(1), [&](const NOExpr::Factors& plain_fs, const Rational& coeff) {
            std::vector<std::tuple<Gen, Var, Part>> shape;
            std::vector<int> order_sum(dims, 0);
            for (const FieldFactor& f : plain_fs) {
                shape.emplace_back(f.gen, f.var, f.part);
                order_sum[f.var] += f.deriv;
            }
            Group& g = groups[{std::move(shape), std::move(order_sum), used}];
            g.members.push_back(plain_fs);
            g.coeffs.push_back(coeff);
        });
        for (const auto& [key, g] : groups) {
            const std::vector<int>& shift_used = std::get<2>(key);
            std::vector<bool> present(dims, false);
            for (const FieldFactor& f : g.members[0]) present[f.var] = true;
            Box box{std::vector<int>(dims, 0), std::vector<int>(dims, 0)};
            bool empty = false;
            for (Var z = 0; z < dims; ++z) {
                if (!present[z]) continue;
                box.hi[z] = whi[z] - min_a[z] - shift_used[z];
                box.lo[z] = wlo[z] - max_a[z] - shift_used[z];
                if (box.lo[z] > box.hi[z]) empty = true;
            }
            if (empty) continue;
            std::vector<int> total(dims);
            for (const auto& [b, x] : normal_ordered_combination_window(h_, g.members, g.coeffs, box, v_)) {
                for (const auto& [a, ca] : lterms) {
                    bool inside = true;
                    for (Var z = 0; z < dims && inside; ++z) {
                        total[z] = b[z] + a[z] + shift_used[z];
                        inside = total[z] >= wlo[z] && total[z] <= whi[z];
                    }
                    if (inside) accumulate(out, total, x * ca);
                }
            }
        }
    }

    // Replaces each shifted factor h^{(m)}(z + s) by binom(m+i, i) s^i h^{(m+i)}(z), keeping
    // the total power of each shift variable within its budget.
    template <class Leaf>
    void distribute(NOExpr::Factors& cur, std::size_t j, std::vector<int>& used, const std::vector<int>& budget,
                    const Rational& coeff, const Leaf& leaf) {
        while (j < cur.size() && cur[j].shift == kNoShift) ++j;
        if (j == cur.size()) {
            leaf(cur, coeff);
            return;
        }
        const FieldFactor orig = cur[j];
        const Var sv = orig.shift;
        for (int i = 0; used[sv] + i <= budget[sv]; ++i) {
            cur[j] = FieldFactor{orig.gen, orig.deriv + i, orig.var, Part::full, kNoShift};
            used[sv] += i;
            distribute(cur, j + 1, used, budget, coeff * binom(orig.deriv + i, i), leaf);
            used[sv] -= i;
        }
        cur[j] = orig;
    }

    const HSpace& h_;
    const FockVector& v_;
    const std::vector<Var>& order_;
    const Box& window_;
    Var nvars_ = 0;
    std::map<std::tuple<NOExpr::Factors, std::vector<int>, std::vector<int>>, std::map<std::vector<int>, FockVector>>
        window_cache_;
};

}  // namespace

WindowedSeries apply_series(const HSpace& h, const NOExpr& e, const FockVector& v, const std::vector<Var>& order,
                            const Box& window) {
    window.validate();
    if (window.dims() != order.size()) throw std::invalid_argument("apply_series: one window axis per variable");
    std::set<Var> in_order(order.begin(), order.end());
    if (in_order.size() != order.size() || (!order.empty() && *in_order.begin() < 0))
        throw std::invalid_argument("apply_series: variable order must list distinct variables");
    for (const auto& [fs, c] : e.terms()) {
        for (const FieldFactor& f : fs)
            if (!in_order.count(f.var) || (f.shift != kNoShift && !in_order.count(f.shift)))
                throw std::invalid_argument("apply_series: factor variable missing from the order");
        for (Var z : c.variables())
            if (!in_order.count(z)) throw std::invalid_argument("apply_series: coefficient variable missing from the order");
    }
    WindowedSeries out{window, {}};
    SeriesApplier app(h, v, order, window);
    for (const auto& [fs, c] : e.terms()) app.add_term(fs, c, out);
    return out;
}

}  // namespace mosva
