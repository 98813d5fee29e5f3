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

#include "mosva/delta.hpp"

#include <functional>
#include <stdexcept>

namespace mosva {

namespace {

void check_indices(std::span<const int> idx, std::size_t r) {
    if (idx.size() % 2) throw std::invalid_argument("total contraction number: odd number of indices");
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 1 || static_cast<std::size_t>(idx[i]) > r)
            throw std::invalid_argument("total contraction number: index out of range");
        if (i && idx[i] <= idx[i - 1]) throw std::invalid_argument("total contraction number: indices must increase");
    }
}

const Rational& br(const std::vector<std::vector<Rational>>& b, int p, int q) { return b[p - 1][q - 1]; }

std::vector<int> without(std::span<const int> idx, std::size_t a, std::size_t b) {
    std::vector<int> out;
    for (std::size_t i = 0; i < idx.size(); ++i)
        if (i != a && i != b) out.push_back(idx[i]);
    return out;
}

Rational t_rec(const std::vector<std::vector<Rational>>& b, std::span<const int> idx) {
    if (idx.empty()) return Rational(1);
    Rational out;
    // positions k = 2..2t in 1-based numbering carry the sign (-1)^k
    for (std::size_t k = 1; k < idx.size(); ++k) {
        const Rational& x = br(b, idx[0], idx[k]);
        if (x.is_zero()) continue;
        const Rational term = x * t_rec(b, without(idx, 0, k));
        out = k % 2 ? out + term : out - term;
    }
    return out;
}

Rational t_alt_rec(const std::vector<std::vector<Rational>>& b, std::span<const int> idx) {
    if (idx.empty()) return Rational(1);
    Rational out;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t c = a + 1; c < idx.size(); ++c) {
            const Rational& x = br(b, idx[a], idx[c]);
            if (x.is_zero()) continue;
            // (-1)^{alpha+beta-1} with alpha = a+1, beta = c+1
            const Rational term = x * t_alt_rec(b, without(idx, a, c));
            out = (a + c + 1) % 2 ? out - term : out + term;
        }
    }
    return out / Rational(static_cast<long>(idx.size() / 2));
}

void matchings(std::vector<int>& partner, const std::function<void()>& f) {
    std::size_t first = 0;
    while (first < partner.size() && partner[first] >= 0) ++first;
    if (first == partner.size()) {
        f();
        return;
    }
    for (std::size_t j = first + 1; j < partner.size(); ++j) {
        if (partner[j] >= 0) continue;
        partner[first] = static_cast<int>(j);
        partner[j] = static_cast<int>(first);
        matchings(partner, f);
        partner[first] = partner[j] = -1;
    }
}

}  // namespace

DeltaCoeffs DeltaCoeffs::default_fixture() {
    DeltaCoeffs c;
    c.set(0, 1, Rational(1));
    return c;
}

DeltaCoeffs DeltaCoeffs::from_entries(const std::vector<std::tuple<int, int, Rational>>& entries) {
    std::map<std::pair<int, int>, Rational> given;
    for (const auto& [m, n, c] : entries) {
        auto [it, inserted] = given.try_emplace({m, n}, c);
        if (!inserted && it->second != c) throw std::invalid_argument("DeltaCoeffs: conflicting entries");
    }
    DeltaCoeffs out;
    for (const auto& [mn, c] : given) {
        auto t = given.find({mn.second, mn.first});
        if (t != given.end() && t->second != -c)
            throw std::invalid_argument("DeltaCoeffs: entries violate C_mn = -C_nm");
        out.set(mn.first, mn.second, c);
    }
    return out;
}

void DeltaCoeffs::set(int m, int n, const Rational& c) {
    if (m < 0 || n < 0) throw std::invalid_argument("DeltaCoeffs: negative index");
    if (m == n) {
        if (!c.is_zero()) throw std::invalid_argument("DeltaCoeffs: diagonal entries must vanish");
        return;
    }
    if (c.is_zero()) {
        c_.erase({m, n});
        c_.erase({n, m});
        return;
    }
    c_[{m, n}] = c;
    c_[{n, m}] = -c;
}

Rational DeltaCoeffs::operator()(int m, int n) const {
    auto it = c_.find({m, n});
    return it == c_.end() ? Rational(0) : it->second;
}

void add_into(ExponentMap& m, int exp, const FockVector& v) {
    if (v.is_zero()) return;
    FockVector& slot = m[exp];
    slot += v;
    if (slot.is_zero()) m.erase(exp);
}

ExponentMap delta_apply(const HSpace& h, const DeltaCoeffs& C, const Word& w) {
    ExponentMap out;
    for (std::size_t p = 0; p < w.length(); ++p) {
        for (std::size_t q = p + 1; q < w.length(); ++q) {
            const int np = w[p].creation_index(), nq = w[q].creation_index();
            const Rational c = C(np, nq) * h.pair(w[p].gen, w[q].gen);
            if (c.is_zero()) continue;
            const std::size_t pos[2] = {p, q};
            // (-1)^{p+q} in 1-based positions equals (-1)^{p+q} in 0-based ones
            add_into(out, -np - nq - 1, FockVector::basis(w.without(pos), (p + q) % 2 ? -c : c));
        }
    }
    return out;
}

ExponentMap delta_apply(const HSpace& h, const DeltaCoeffs& C, const FockVector& v) {
    ExponentMap out;
    for (const auto& [w, c] : v.terms())
        for (const auto& [e, x] : delta_apply(h, C, w)) add_into(out, e, x * c);
    return out;
}

std::vector<std::vector<Rational>> contraction_brackets(const HSpace& h, const DeltaCoeffs& C, const Word& w) {
    const std::size_t r = w.length();
    std::vector<std::vector<Rational>> b(r, std::vector<Rational>(r));
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q)
            b[p][q] = h.pair(w[p].gen, w[q].gen) * C(w[p].creation_index(), w[q].creation_index());
    return b;
}

Rational t_number(const std::vector<std::vector<Rational>>& bracket, std::span<const int> indices) {
    check_indices(indices, bracket.size());
    return t_rec(bracket, indices);
}

Rational t_number_alt(const std::vector<std::vector<Rational>>& bracket, std::span<const int> indices) {
    check_indices(indices, bracket.size());
    return t_alt_rec(bracket, indices);
}

Rational t_number_pairings(const std::vector<std::vector<Rational>>& bracket, std::span<const int> indices) {
    check_indices(indices, bracket.size());
    std::vector<int> partner(indices.size(), -1);
    Rational out;
    matchings(partner, [&] {
        Rational term(1);
        int crossings = 0;
        for (std::size_t p = 0; p < partner.size(); ++p) {
            const std::size_t q = static_cast<std::size_t>(partner[p]);
            if (q < p) continue;
            term = term * br(bracket, indices[p], indices[q]);
            // edge (p, q) crosses (p2, q2) when p < p2 < q < q2
            for (std::size_t p2 = p + 1; p2 < q; ++p2)
                if (static_cast<std::size_t>(partner[p2]) > q) ++crossings;
        }
        out = crossings % 2 ? out - term : out + term;
    });
    return out;
}

ExponentMap exp_delta(const HSpace& h, const DeltaCoeffs& C, const FockVector& v) {
    ExponentMap out;
    for (const auto& [w, c] : v.terms()) {
        const int r = static_cast<int>(w.length());
        const auto b = contraction_brackets(h, C, w);
        add_into(out, 0, FockVector::basis(w, c));
        for (int t = 1; 2 * t <= r; ++t) {
            std::vector<int> idx(2 * t);
            for (int i = 0; i < 2 * t; ++i) idx[i] = i + 1;
            while (true) {
                const Rational T = t_number(b, idx);
                if (!T.is_zero()) {
                    int sum = 0, msum = 0;
                    std::vector<std::size_t> pos;
                    for (int i : idx) {
                        sum += i;
                        msum += w[i - 1].creation_index();
                        pos.push_back(static_cast<std::size_t>(i - 1));
                    }
                    add_into(out, -msum - t, FockVector::basis(w.without(pos), (sum % 2 ? -T : T) * c));
                }
                int k = 2 * t - 1;
                while (k >= 0 && idx[k] == r - (2 * t - 1 - k)) --k;
                if (k < 0) break;
                ++idx[k];
                for (int j = k + 1; j < 2 * t; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }
    return out;
}

CheckOutcome check_exp_delta_neg_comm(const HSpace& h, const DeltaCoeffs& C, Gen a, int m,
                                      const std::vector<FockVector>& samples, const Box& window) {
    window.validate();
    if (window.dims() != 2) throw std::invalid_argument("check_exp_delta_neg_comm: window must be two-dimensional");
    if (m < 0) throw std::invalid_argument("check_exp_delta_neg_comm: negative derivative order");
    CheckOutcome rep{"exp-delta commutator with a^(m)(x)^-", true, 0, {}};
    auto at = [](const ExponentMap& e, int k) { auto it = e.find(k); return it == e.end() ? FockVector() : it->second; };
    for (const FockVector& v : samples) {
        const ExponentMap ev = exp_delta(h, C, v);
        window.for_each([&](const std::vector<int>& k) {
            const int k1 = k[0], k2 = k[1];
            FockVector lhs, rhs;
            if (k1 >= 0) {
                const int n = k1 + m;
                const Mode cr = creation(a, n);
                const FockVector moved = at(exp_delta(h, C, apply_mode(h, cr, v)), k2) - apply_mode(h, cr, at(ev, k2));
                lhs = moved * binom(n, m);
                const int alpha = k1 + m;
                for (const auto& [bn, c] : C.entries()) {
                    if (bn.second != alpha) continue;
                    const int beta = bn.first;
                    rhs += apply_mode(h, annihilation(a, beta), at(ev, k2 + beta + alpha + 1)) * (c * binom(alpha, m));
                }
            }
            ++rep.cases;
            if (lhs != rhs && rep.passed) {
                rep.passed = false;
                rep.counterexample = "v = " + render(h, v) + ", k1 = " + std::to_string(k1) + ", k2 = " + std::to_string(k2);
            }
        });
    }
    return rep;
}

}  // namespace mosva
