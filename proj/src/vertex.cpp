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

#include "mosva/vertex.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace mosva {

namespace {

int floor_div2(int a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

int inversion_parity(const std::vector<int>& first, const std::vector<int>& second) {
    int inv = 0;
    for (int p : first)
        for (int q : second) inv += p > q ? 1 : 0;
    return inv % 2;
}

// Right-to-left evaluation of sum_j c_j :F_1^{(m_1j)} ... F_r^{(m_rj)}: v over a box of
// exponents, for members j sharing generators, variables and parts. Exponents are tracked as if
// every derivative order were 0; member j then weighs the mode chosen for F_i by the binomial
// from its own order m_ij, and the caller shifts each variable back by that variable's sum of
// orders (equal across members). Annihilators act on v in order from the right; creations are
// collected and prepended last. `parity` counts (annihilator, creation) pairs standing in the
// wrong order. lo_/hi_ hold the exponent range still to be produced per variable.
class NormalOrderedEvaluator {
public:
    NormalOrderedEvaluator(const HSpace& h, std::span<const FieldFactor> factors,
                           std::vector<std::vector<int>> orders, std::vector<int> lo, std::vector<int> hi)
        : h_(h), f_(factors), orders_(std::move(orders)), lo_(std::move(lo)), hi_(std::move(hi)),
          chosen_(lo_.size(), 0), rest_count_(lo_.size(), 0), rest_mass2_(lo_.size(), 0),
          coeffs_(f_.size() + 1) {
        for (const FieldFactor& x : f_) {
            ++rest_count_[x.var];
            if (x.part != Part::minus) rest_mass2_[x.var] += 1;
        }
    }

    std::map<std::vector<int>, FockVector> run(const FockVector& v, std::vector<Rational> members) {
        out_.clear();
        const std::size_t n = members.size();
        for (auto& c : coeffs_) c.assign(n, Rational(0));
        coeffs_[f_.size()] = std::move(members);
        step(static_cast<int>(f_.size()) - 1, v, 0);
        for (auto it = out_.begin(); it != out_.end();) it = it->second.is_zero() ? out_.erase(it) : std::next(it);
        return std::move(out_);
    }

private:
    void step(int i, const FockVector& cur, int parity) {
        if (i < 0) {
            Rational c0;
            for (const Rational& c : coeffs_[0]) c0 += c;
            if (c0.is_zero()) return;
            if (parity) c0 = -c0;
            FockVector& slot = out_[chosen_];
            for (const auto& [w, c] : cur.terms()) {
                std::vector<Mode> modes;
                modes.reserve(creations_.size() + w.length());
                modes.assign(creations_.rbegin(), creations_.rend());
                modes.insert(modes.end(), w.modes().begin(), w.modes().end());
                slot.add_term(Word(std::move(modes)), c * c0);
            }
            return;
        }
        const FieldFactor& F = f_[i];
        const Var z = F.var;
        --rest_count_[z];
        if (F.part != Part::minus) rest_mass2_[z] -= 1;
        const int budget = cur.max_weight2();

        if (rest_count_[z] == 0) {
            // the last factor in z lands the total inside [lo, hi]
            if (F.part != Part::plus)
                for (int e = std::max(lo_[z], 0); e <= hi_[z]; ++e) try_exponent(i, e, cur, parity);
            if (F.part != Part::minus) {
                for (int n = 0; 2 * n + 1 <= budget; ++n) {
                    const int e = -n - 1;
                    if (e >= lo_[z] && e <= hi_[z]) try_exponent(i, e, cur, parity);
                }
            }
        } else {
            const int any_ann = rest_mass2_[z] > 0 ? 1 : 0;
            auto min_rest = [&](int b) { return floor_div2(-b * any_ann - rest_mass2_[z]); };
            if (F.part != Part::plus) {
                const int top = hi_[z] - min_rest(budget);
                for (int e = 0; e <= top; ++e) try_exponent(i, e, cur, parity);
            }
            if (F.part != Part::minus) {
                for (int n = 0; 2 * n + 1 <= budget; ++n) {
                    const int e = -n - 1;
                    if (e <= hi_[z] - min_rest(budget - 2 * n - 1)) try_exponent(i, e, cur, parity);
                }
            }
        }

        ++rest_count_[z];
        if (F.part != Part::minus) rest_mass2_[z] += 1;
    }

    void shift(Var z, int e) {
        lo_[z] -= e;
        hi_[z] -= e;
        chosen_[z] += e;
    }

    // Weighs each member by binom(top, m_ij); false when every member vanishes.
    bool weigh(int i, long top) {
        const std::vector<Rational>& in = coeffs_[i + 1];
        std::vector<Rational>& out = coeffs_[i];
        bool any = false;
        for (std::size_t j = 0; j < in.size(); ++j) {
            const int m = orders_[i][j];
            if (in[j].is_zero() || (top >= 0 && top < m)) {
                out[j] = Rational(0);
                continue;
            }
            out[j] = m == 0 ? in[j] : in[j] * binom(top, m);
            any = true;
        }
        return any;
    }

    // e is the exponent of F_i with order 0: a creation index e >= 0, or an annihilator at
    // level -e-1.
    void try_exponent(int i, int e, const FockVector& cur, int parity) {
        const FieldFactor& F = f_[i];
        if (e >= 0) {
            if (F.part == Part::plus) return;
            if (!weigh(i, e)) return;
            creations_.push_back(creation(F.gen, e));
            shift(F.var, e);
            step(i - 1, cur, parity);
            shift(F.var, -e);
            creations_.pop_back();
            return;
        }
        const int n = -e - 1;
        if (F.part == Part::minus || 2 * n + 1 > cur.max_weight2()) return;
        const FockVector next = apply_mode(h_, Mode{F.gen, n}, cur);
        if (next.is_zero() || !weigh(i, e)) return;
        shift(F.var, e);
        step(i - 1, next, parity ^ static_cast<int>(creations_.size() % 2));
        shift(F.var, -e);
    }

    const HSpace& h_;
    std::span<const FieldFactor> f_;
    std::vector<std::vector<int>> orders_;  // orders_[i][j]: derivative order of F_i in member j
    std::vector<int> lo_, hi_;
    std::vector<int> chosen_;
    std::vector<int> rest_count_;
    std::vector<int> rest_mass2_;  // unprocessed factors that can annihilate
    std::vector<std::vector<Rational>> coeffs_;  // coeffs_[i]: member weights after choosing F_i
    std::vector<Mode> creations_;
    std::map<std::vector<int>, FockVector> out_;
};

// Evaluates a group of members over the box (in true exponents) and shifts results back.
std::map<std::vector<int>, FockVector> evaluate_group(const HSpace& h, std::span<const FieldFactor> reference,
                                                      std::vector<std::vector<int>> orders, std::vector<Rational> members,
                                                      const std::vector<int>& order_sum, std::vector<int> lo,
                                                      std::vector<int> hi, const FockVector& v) {
    for (std::size_t z = 0; z < lo.size(); ++z) {
        lo[z] += order_sum[z];
        hi[z] += order_sum[z];
    }
    auto res = NormalOrderedEvaluator(h, reference, std::move(orders), std::move(lo), std::move(hi)).run(v, std::move(members));
    bool shifted = false;
    for (int s : order_sum) shifted = shifted || s != 0;
    if (!shifted) return res;
    std::map<std::vector<int>, FockVector> out;
    for (auto& [e, x] : res) {
        std::vector<int> t = e;
        for (std::size_t z = 0; z < t.size(); ++z) t[z] -= order_sum[z];
        out.emplace(std::move(t), std::move(x));
    }
    return out;
}

}  // namespace

std::vector<Shuffle> enumerate_shuffles(int r, int eta) {
    if (r < 0 || eta < 0 || eta > r) throw std::invalid_argument("enumerate_shuffles: need 0 <= eta <= r");
    std::vector<Shuffle> out;
    std::vector<bool> pick(r, false);
    std::fill(pick.begin(), pick.begin() + eta, true);
    do {
        Shuffle s;
        s.eta = eta;
        for (int i = 0; i < r; ++i) (pick[i] ? s.first : s.second).push_back(i + 1);
        s.sign = inversion_parity(s.first, s.second) ? -1 : 1;
        out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

NormalOrdering normal_order_modes(std::span<const Mode> ms) {
    std::vector<int> first, second;
    NormalOrdering out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i].is_creation()) {
            first.push_back(static_cast<int>(i));
            out.modes.push_back(ms[i]);
        } else {
            second.push_back(static_cast<int>(i));
        }
    }
    for (int i : second) out.modes.push_back(ms[i]);
    out.sign = inversion_parity(first, second) ? -1 : 1;
    return out;
}

std::vector<FieldFactor> word_factors(const Word& w, Var z) {
    std::vector<FieldFactor> out;
    for (const Mode& m : w.modes()) out.push_back(FieldFactor{m.gen, m.creation_index(), z, Part::full, kNoShift});
    return out;
}

std::map<std::vector<int>, FockVector> normal_ordered_window(const HSpace& h, std::span<const FieldFactor> factors,
                                                             const Box& box, const FockVector& v) {
    const std::vector<FieldFactor> member(factors.begin(), factors.end());
    const Rational one(1);
    return normal_ordered_combination_window(h, std::span(&member, 1), std::span(&one, 1), box, v);
}

std::map<std::vector<int>, FockVector> normal_ordered_combination_window(const HSpace& h,
                                                                         std::span<const std::vector<FieldFactor>> members,
                                                                         std::span<const Rational> coeffs, const Box& box,
                                                                         const FockVector& v) {
    box.validate();
    if (members.size() != coeffs.size())
        throw std::invalid_argument("normal_ordered_combination_window: one coefficient per member");
    if (members.empty()) return {};
    const Var nvars = static_cast<Var>(box.dims());
    const std::vector<FieldFactor>& first = members[0];
    std::vector<int> order_sum(nvars, 0), count(nvars, 0);
    for (const FieldFactor& f : first) {
        if (f.shift != kNoShift) throw std::invalid_argument("normal_ordered_window: shifted factor");
        if (f.var < 0) throw std::invalid_argument("normal_ordered_window: negative variable index");
        if (f.var >= nvars) throw std::invalid_argument("normal_ordered_window: factor variable outside the box");
        ++count[f.var];
        order_sum[f.var] += f.deriv;
    }
    std::vector<FieldFactor> reference(first);
    for (FieldFactor& f : reference) f.deriv = 0;
    std::vector<std::vector<int>> orders(first.size());
    for (const std::vector<FieldFactor>& m : members) {
        if (m.size() != first.size())
            throw std::invalid_argument("normal_ordered_combination_window: members differ in length");
        std::vector<int> sum(nvars, 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
            const FieldFactor& f = m[i];
            if (f.gen != first[i].gen || f.var != first[i].var || f.part != first[i].part || f.shift != kNoShift)
                throw std::invalid_argument("normal_ordered_combination_window: members differ beyond derivative orders");
            if (f.deriv < 0) throw std::invalid_argument("normal_ordered_window: negative derivative order");
            orders[i].push_back(f.deriv);
            sum[f.var] += f.deriv;
        }
        if (sum != order_sum)
            throw std::invalid_argument("normal_ordered_combination_window: members differ in total order");
    }
    std::vector<int> lo = box.lo, hi = box.hi;
    for (Var z = 0; z < nvars; ++z) {
        if (count[z] == 0) {
            if (lo[z] > 0 || hi[z] < 0) return {};
            lo[z] = hi[z] = 0;
        } else {
            lo[z] = std::max(lo[z], normal_ordered_lower_bound(first, z, v.max_weight2()));
            if (lo[z] > hi[z]) return {};
        }
    }
    if (v.is_zero()) return {};
    return evaluate_group(h, reference, std::move(orders), std::vector<Rational>(coeffs.begin(), coeffs.end()), order_sum,
                          std::move(lo), std::move(hi), v);
}

FockVector normal_ordered_coefficient(const HSpace& h, std::span<const FieldFactor> factors, const Monomial& target,
                                      const FockVector& v) {
    Var nvars = target.size();
    for (const FieldFactor& f : factors) {
        if (f.shift != kNoShift) throw std::invalid_argument("normal_ordered_coefficient: shifted factor");
        if (f.var < 0) throw std::invalid_argument("normal_ordered_coefficient: negative variable index");
        nvars = std::max(nvars, f.var + 1);
    }
    std::vector<int> t(nvars);
    for (Var z = 0; z < nvars; ++z) t[z] = target[z];
    auto res = normal_ordered_window(h, factors, Box{t, t}, v);
    return res.empty() ? FockVector() : std::move(res.begin()->second);
}

int normal_ordered_lower_bound(std::span<const FieldFactor> factors, Var z, int v_weight2) {
    int mass = 0;
    bool any = false;
    for (const FieldFactor& f : factors) {
        if (f.var != z || f.part == Part::minus) continue;
        mass += 2 * f.deriv + 1;
        any = true;
    }
    return any ? floor_div2(-std::max(v_weight2, 0) - mass) : 0;
}

FockVector y_coeff(const HSpace& h, const FockVector& u, int k, const FockVector& v) {
    auto res = y_coeffs(h, u, k, k, v);
    return res.empty() ? FockVector() : std::move(res.begin()->second);
}

std::map<int, FockVector> y_coeffs(const HSpace& h, const FockVector& u, int lo, int hi, const FockVector& v) {
    std::map<int, FockVector> out;
    if (lo > hi || v.is_zero()) return out;
    // Words with the same generators and the same total order share one evaluation.
    struct Group {
        std::vector<std::vector<int>> orders;
        std::vector<Rational> members;
    };
    std::map<std::pair<std::vector<Gen>, int>, Group> groups;
    for (const auto& [w, c] : u.terms()) {
        if (w.is_vacuum()) {
            if (lo <= 0 && 0 <= hi) out[0] += v * c;
            continue;
        }
        std::vector<Gen> gens;
        int total = 0;
        for (const Mode& m : w.modes()) {
            gens.push_back(m.gen);
            total += m.creation_index();
        }
        Group& g = groups[{std::move(gens), total}];
        if (g.orders.empty()) g.orders.resize(w.length());
        for (std::size_t i = 0; i < w.length(); ++i) g.orders[i].push_back(w[i].creation_index());
        g.members.push_back(c);
    }
    const int w2 = v.max_weight2();
    for (auto& [key, g] : groups) {
        const auto& [gens, total] = key;
        std::vector<FieldFactor> reference;
        for (Gen a : gens) reference.push_back(FieldFactor{a, 0, 0, Part::full, kNoShift});
        const int low = std::max(lo, normal_ordered_lower_bound(reference, 0, w2) - total);
        if (low > hi) continue;
        for (auto& [e, x] : evaluate_group(h, reference, std::move(g.orders), std::move(g.members), {total}, {low}, {hi}, v))
            out[e[0]] += x;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

FockVector WindowedSeries::at(const std::vector<int>& exps) const {
    if (!window.contains(exps)) throw std::out_of_range("WindowedSeries::at: exponent outside the window");
    auto it = coefficients.find(exps);
    return it == coefficients.end() ? FockVector() : it->second;
}

WindowedSeries y_series(const HSpace& h, const FockVector& u, const FockVector& v, const Box& window) {
    window.validate();
    if (window.dims() != 1) throw std::invalid_argument("y_series: window must be one-dimensional");
    WindowedSeries s{window, {}};
    for (auto& [k, c] : y_coeffs(h, u, window.lo[0], window.hi[0], v)) s.coefficients.emplace(std::vector<int>{k}, std::move(c));
    return s;
}

WindowedSeries product_series(const HSpace& h, const FockVector& u1, const FockVector& u2, const FockVector& v,
                              const Box& window) {
    window.validate();
    if (window.dims() != 2) throw std::invalid_argument("product_series: window must be two-dimensional");
    WindowedSeries s{window, {}};
    for (const auto& [k2, inner] : y_coeffs(h, u2, window.lo[1], window.hi[1], v))
        for (auto& [k1, c] : y_coeffs(h, u1, window.lo[0], window.hi[0], inner))
            s.coefficients.emplace(std::vector<int>{k1, k2}, std::move(c));
    return s;
}

WindowedSeries multi_product_series(const HSpace& h, const std::vector<FockVector>& us, const FockVector& v,
                                    const Box& window) {
    window.validate();
    if (window.dims() != us.size()) throw std::invalid_argument("multi_product_series: one window axis per state");
    WindowedSeries s{window, {}};
    std::vector<int> exps(us.size());
    // Innermost operator first: level i holds Y(u_i, z_i) ... Y(u_r, z_r) v.
    auto rec = [&](auto&& self, int i, const FockVector& cur) -> void {
        if (i < 0) {
            s.coefficients.emplace(exps, cur);
            return;
        }
        for (const auto& [k, next] : y_coeffs(h, us[i], window.lo[i], window.hi[i], cur)) {
            exps[i] = k;
            self(self, i - 1, next);
        }
    };
    if (!v.is_zero()) rec(rec, static_cast<int>(us.size()) - 1, v);
    return s;
}

WindowedSeries iterate_series(const HSpace& h, const FockVector& u1, const FockVector& u2, const FockVector& v,
                              const Box& window) {
    window.validate();
    if (window.dims() != 2) throw std::invalid_argument("iterate_series: window must be two-dimensional");
    WindowedSeries s{window, {}};
    for (const auto& [k1, inner] : y_coeffs(h, u1, window.lo[0], window.hi[0], u2))
        for (auto& [k2, c] : y_coeffs(h, inner, window.lo[1], window.hi[1], v))
            s.coefficients.emplace(std::vector<int>{k1, k2}, std::move(c));
    return s;
}

std::string to_string(WeakAssociativityReport::Status s) {
    switch (s) {
        case WeakAssociativityReport::Status::equal: return "equal";
        case WeakAssociativityReport::Status::mismatch: return "mismatch";
        case WeakAssociativityReport::Status::inconclusive: return "inconclusive";
    }
    return "unknown";
}

WeakAssociativityReport check_weak_associativity(const HSpace& h, const Word& u1, const Word& u2,
                                                 const FockVector& w, const Box& window,
                                                 std::optional<int> pole_order) {
    window.validate();
    if (window.dims() != 2) throw std::invalid_argument("check_weak_associativity: window must be two-dimensional");
    WeakAssociativityReport rep;
    const int w2 = std::max(w.max_weight2(), 0);
    rep.P = (w2 + 1) / 2;
    for (const Mode& m : u1.modes()) rep.P += m.creation_index() + 1;
    if (pole_order) {
        if (*pole_order < 0) throw std::invalid_argument("check_weak_associativity: negative pole order");
        rep.P = *pole_order;
    }
    const int P = rep.P;
    const FockVector U1 = FockVector::basis(u1), U2 = FockVector::basis(u2);

    const int lo1 = window.lo[0], hi1 = window.hi[0], lo2 = window.lo[1], hi2 = window.hi[1];
    // Y(u2, x2) w for x2-exponents j <= hi2, and Y(u1, z) applied to each of them for
    // z-exponents n = k1 + k2 - j - P.
    const int jlow = normal_ordered_lower_bound(word_factors(u2, 0), 0, w2);
    const std::map<int, FockVector> y2 = y_coeffs(h, U2, jlow, hi2, w);
    std::map<int, std::map<int, FockVector>> lhs_terms;
    for (const auto& [j, inner] : y2) lhs_terms[j] = y_coeffs(h, U1, lo1 - P, hi1 + hi2 - j - P, inner);
    // Y(u1, x0) u2 for x0-exponents a in [lo1 - P, hi1], then Y(., x2) w for b in [lo2 - P, hi2].
    std::map<int, std::map<int, FockVector>> rhs_terms;
    for (const auto& [a, inner] : y_coeffs(h, U1, lo1 - P, hi1, U2)) rhs_terms[a] = y_coeffs(h, inner, lo2 - P, hi2, w);
    auto lookup = [](const std::map<int, std::map<int, FockVector>>& t, int a, int b) -> const FockVector* {
        auto it = t.find(a);
        if (it == t.end()) return nullptr;
        auto jt = it->second.find(b);
        return jt == it->second.end() ? nullptr : &jt->second;
    };

    bool any_nonzero = false;
    for (int k1 = window.lo[0]; k1 <= window.hi[0]; ++k1) {
        for (int k2 = window.lo[1]; k2 <= window.hi[1]; ++k2) {
            // (x0+x2)^N expands as sum_i binom(N, i) x0^{N-i} x2^i.
            FockVector lhs;
            for (int j = jlow; j <= k2; ++j) {
                const int i = k2 - j;
                const int N = k1 + i;
                if (const FockVector* t = lookup(lhs_terms, j, N - P)) lhs += *t * binom(N, i);
            }
            FockVector rhs;
            for (int i = 0; i <= P; ++i)
                if (const FockVector* t = lookup(rhs_terms, k1 - P + i, k2 - i)) rhs += *t * binom(P, i);
            if (!lhs.is_zero() || !rhs.is_zero()) any_nonzero = true;
            if (lhs != rhs && !rep.first_mismatch) {
                rep.first_mismatch = std::vector<int>{k1, k2};
                rep.product_side = lhs;
                rep.iterate_side = rhs;
            }
        }
    }
    if (rep.first_mismatch)
        rep.status = WeakAssociativityReport::Status::mismatch;
    else
        rep.status = any_nonzero ? WeakAssociativityReport::Status::equal : WeakAssociativityReport::Status::inconclusive;
    return rep;
}

bool AxiomReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; });
}

AxiomReport check_axioms(const HSpace& h, const std::vector<FockVector>& samples, int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("check_axioms: empty window");
    AxiomReport rep;
    auto fail = [&](CheckOutcome& c, const std::string& what) {
        if (c.passed) c.counterexample = what;
        c.passed = false;
    };
    auto describe = [&](const FockVector& u, const FockVector& v, int k) {
        return "u = " + render(h, u) + ", v = " + render(h, v) + ", k = " + std::to_string(k);
    };
    const FockVector one = FockVector::vacuum();

    CheckOutcome identity{"identity", true, 0, {}};
    CheckOutcome creation_ax{"creation", true, 0, {}};
    CheckOutcome d_x1{"D is the x^1 coefficient of Y(v,x)1", true, 0, {}};
    for (const FockVector& v : samples) {
        for (int k = lo; k <= hi; ++k) {
            ++identity.cases;
            if (y_coeff(h, one, k, v) != (k == 0 ? v : FockVector())) fail(identity, describe(one, v, k));
            ++creation_ax.cases;
            const FockVector c = y_coeff(h, v, k, one);
            if (k < 0 && !c.is_zero()) fail(creation_ax, describe(v, one, k));
            if (k == 0 && c != v) fail(creation_ax, describe(v, one, k));
        }
        ++d_x1.cases;
        if (y_coeff(h, v, 1, one) != d_op(v)) fail(d_x1, describe(v, one, 1));
    }

    CheckOutcome grading{"grading-commutator", true, 0, {}};
    CheckOutcome d_deriv{"D-derivative", true, 0, {}};
    CheckOutcome d_comm{"D-commutator", true, 0, {}};
    CheckOutcome lower{"lower truncation", true, 0, {}};
    CheckOutcome homog{"weight homogeneity", true, 0, {}};
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const FockVector& u = samples[s];
        const FockVector& v = samples[(s + 1) % samples.size()];
        const FockVector du = d_op(u), gu = grading_op(u), dv = d_op(v), gv = grading_op(v);
        const int bound = floor_div2(-std::max(u.max_weight2(), 0) - std::max(v.max_weight2(), 0));
        std::map<int, FockVector> yk;
        auto y_at = [&](int k) -> const FockVector& {
            auto it = yk.find(k);
            if (it == yk.end()) it = yk.emplace(k, y_coeff(h, u, k, v)).first;
            return it->second;
        };
        for (int k = lo; k <= hi; ++k) {
            const FockVector& c = y_at(k);
            // [d, Y(u,x)] = x d/dx Y(u,x) + Y(du, x)
            ++grading.cases;
            if (grading_op(c) - y_coeff(h, u, k, gv) != c * Rational(k) + y_coeff(h, gu, k, v))
                fail(grading, describe(u, v, k));
            // d/dx Y(u,x) = Y(Du, x)
            ++d_deriv.cases;
            if (y_at(k + 1) * Rational(k + 1) != y_coeff(h, du, k, v)) fail(d_deriv, describe(u, v, k));
            // [D, Y(u,x)] = d/dx Y(u,x)
            ++d_comm.cases;
            if (d_op(c) - y_coeff(h, u, k, dv) != y_at(k + 1) * Rational(k + 1)) fail(d_comm, describe(u, v, k));
            ++lower.cases;
            if (k < bound && !c.is_zero()) fail(lower, describe(u, v, k));
            if (u.is_homogeneous() && v.is_homogeneous() && !u.is_zero() && !v.is_zero()) {
                ++homog.cases;
                const int w2 = u.max_weight2() + v.max_weight2() + 2 * k;
                for (const auto& [word, x] : c.terms())
                    if (word.weight2() != w2) fail(homog, describe(u, v, k));
            }
        }
    }
    rep.checks = {identity, creation_ax, d_x1, grading, d_deriv, d_comm, lower, homog};
    return rep;
}

}  // namespace mosva
