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

#include "mosva/verify.hpp"

#include <sstream>
#include <stdexcept>

namespace mosva {

namespace {

// Records the first failure of a named check.
class Recorder {
public:
    explicit Recorder(std::string name) { out_.name = std::move(name); }
    void expect(bool ok, const std::function<std::string()>& why) {
        ++out_.cases;
        if (!ok && out_.passed) {
            out_.passed = false;
            out_.counterexample = why();
        }
    }
    CheckOutcome done() { return std::move(out_); }

private:
    CheckOutcome out_;
};

std::string render_word_list(const HSpace& h, std::initializer_list<const Word*> ws) {
    std::string s;
    for (const Word* w : ws) s += (s.empty() ? "" : ", ") + render_word(h, *w);
    return s;
}

std::string render_map(const HSpace& h, const ExponentMap& m) {
    if (m.empty()) return "0";
    std::ostringstream os;
    for (const auto& [e, v] : m) os << "[x^" << e << "] " << render(h, v) << "; ";
    return os.str();
}

ExponentMap convolve_delta(const HSpace& h, const DeltaCoeffs& C, const ExponentMap& m) {
    ExponentMap out;
    for (const auto& [e, v] : m)
        for (const auto& [e2, x] : delta_apply(h, C, v)) add_into(out, e + e2, x);
    return out;
}

int max_coefficient_index(const DeltaCoeffs& C) {
    int k = 0;
    for (const auto& [mn, c] : C.entries()) k = std::max(k, mn.first);
    return k;
}

// Every word over h with length <= max_length and creation indices <= max_index.
std::vector<Word> all_words(const HSpace& h, int max_length, int max_index) {
    std::vector<Word> out{Word()};
    std::vector<Word> layer{Word()};
    for (int len = 1; len <= max_length; ++len) {
        std::vector<Word> next;
        for (const Word& w : layer)
            for (Gen g = 0; g < h.dim(); ++g)
                for (int m = 0; m <= max_index; ++m) next.push_back(w.prepended(creation(g, m)));
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

}  // namespace

PolarizedBasis default_polarized_basis(const HSpace& h) {
    if (!h.is_default_polarized()) throw std::invalid_argument("default_polarized_basis: form is not default polarized");
    PolarizedBasis b;
    for (int i = 1; i <= h.M(); ++i) {
        std::vector<Rational> e(h.dim()), f(h.dim());
        e[h.e(i)] = Rational(1);
        f[h.f(i)] = Rational(1);
        b.e.push_back(e);
        b.f.push_back(f);
    }
    return b;
}

void validate_polarized_basis(const HSpace& h, const PolarizedBasis& b) {
    auto form = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
        Rational s;
        for (Gen g = 0; g < h.dim(); ++g)
            for (Gen k = 0; k < h.dim(); ++k) s += x[g] * y[k] * h.pair(g, k);
        return s;
    };
    const std::size_t M = static_cast<std::size_t>(h.M());
    if (b.e.size() != M || b.f.size() != M) throw std::invalid_argument("polarized basis: wrong number of vectors");
    for (std::size_t i = 0; i < M; ++i) {
        if (static_cast<int>(b.e[i].size()) != h.dim() || static_cast<int>(b.f[i].size()) != h.dim())
            throw std::invalid_argument("polarized basis: wrong vector size");
    }
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = 0; j < M; ++j) {
            if (form(b.e[i], b.f[j]) != Rational(i == j ? 1 : 0) || !form(b.e[i], b.e[j]).is_zero() ||
                !form(b.f[i], b.f[j]).is_zero())
                throw std::invalid_argument("polarized basis: pairing is not standard");
        }
    }
}

ExponentMap delta_by_modes(const HSpace& h, const DeltaCoeffs& C, const PolarizedBasis& b, const FockVector& v) {
    validate_polarized_basis(h, b);
    ExponentMap out;
    for (std::size_t i = 0; i < b.e.size(); ++i) {
        for (const auto& [mn, c] : C.entries()) {
            const auto [m, n] = mn;
            const FockVector fv = apply_mode_combination(h, b.f[i], n, v);
            add_into(out, -m - n - 1, apply_mode_combination(h, b.e[i], m, fv) * c);
        }
    }
    return out;
}

ExponentMap exp_delta_iterative(const HSpace& h, const DeltaCoeffs& C, const FockVector& v) {
    ExponentMap out;
    ExponentMap power;
    add_into(power, 0, v);
    Rational factorial(1);
    for (long t = 0; !power.empty(); ++t) {
        if (t > 0) factorial = factorial * Rational(t);
        for (const auto& [e, x] : power) add_into(out, e, x * (Rational(1) / factorial));
        power = convolve_delta(h, C, power);
    }
    return out;
}

Rational pfaffian(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    if (n % 2) throw std::invalid_argument("pfaffian: odd size");
    Rational result(1);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        // bring a nonzero entry into position (k, k+1) by a simultaneous row/column swap
        std::size_t piv = k + 1;
        while (piv < n && a[k][piv].is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != k + 1) {
            std::swap(a[k + 1], a[piv]);
            for (auto& row : a) std::swap(row[k + 1], row[piv]);
            result = -result;
        }
        const Rational p = a[k][k + 1];
        result = result * p;
        // clear rows/columns j > k+1 against the pair (k, k+1), keeping antisymmetry
        for (std::size_t j = k + 2; j < n; ++j) {
            const Rational s = a[k][j] / p;       // multiple of row k+1
            const Rational t = a[k + 1][j] / p;   // multiple of row k
            for (std::size_t c = 0; c < n; ++c) a[j][c] = a[j][c] - s * a[k + 1][c] + t * a[k][c];
            for (std::size_t r = 0; r < n; ++r) a[r][j] = a[r][j] - s * a[r][k + 1] + t * a[r][k];
        }
    }
    return result;
}

bool SuiteReport::passed() const {
    for (const CheckOutcome& c : checks)
        if (!c.passed) return false;
    return true;
}

SuiteReport fock_identity_suite(const HSpace& h, const std::vector<FockVector>& samples, Rng& rng) {
    Recorder pos("positive modes anticommute"), mixed("mixed anticommutator"), dcomm("[D, h(k+1/2)] = -k h(k-1/2)"),
        wt("modes shift weight"), odd("theta anticommutes with modes");
    const int top = h.dim() - 1;
    for (const FockVector& v : samples) {
        const Gen a = uniform_int(rng, 0, top), b = uniform_int(rng, 0, top);
        const int m = uniform_int(rng, 0, 2), n = uniform_int(rng, 0, 2), k = uniform_int(rng, -3, 3);
        auto where = [&] {
            return "v = " + render(h, v) + ", a = " + h.gen_name(a) + ", b = " + h.gen_name(b) + ", m = " +
                   std::to_string(m) + ", n = " + std::to_string(n) + ", k = " + std::to_string(k);
        };
        const Mode ab[] = {annihilation(a, m), annihilation(b, n)};
        const Mode ba[] = {annihilation(b, n), annihilation(a, m)};
        pos.expect((apply_modes(h, ab, v) + apply_modes(h, ba, v)).is_zero(), where);

        const Mode m1[] = {annihilation(a, m), creation(b, n)};
        const Mode m2[] = {creation(b, n), annihilation(a, m)};
        mixed.expect(apply_modes(h, m1, v) + apply_modes(h, m2, v) == v * (m == n ? h.pair(a, b) : Rational(0)), where);

        const Mode ak{a, k};
        dcomm.expect(d_op(apply_mode(h, ak, v)) - apply_mode(h, ak, d_op(v)) == apply_mode(h, Mode{a, k - 1}, v) * Rational(-k),
                     where);
        bool shifted = true;
        for (const auto& [w, c] : v.terms()) {
            const FockVector image = apply_mode(h, ak, FockVector::basis(w));
            for (const auto& [w2, c2] : image.terms()) shifted = shifted && w2.weight2() == w.weight2() + ak.weight2();
        }
        wt.expect(shifted, where);
        odd.expect(theta(apply_mode(h, ak, v)) == -apply_mode(h, ak, theta(v)), where);
    }
    return {"fock", {pos.done(), mixed.done(), dcomm.done(), wt.done(), odd.done()}};
}

SuiteReport pbw_suite(const HSpace& h, int count, int max_defect, Rng& rng) {
    Recorder conf("pbw confluence"), normal("pbw normal forms have defect 0");
    for (int t = 0; t < count; ++t) {
        const TensorWord w = random_tensor_word(h, max_defect, rng);
        const TensorCombination left = pbw_normal_form(h, w);
        const TensorCombination r1 = pbw_normal_form(h, w, random_strategy(rng()));
        const TensorCombination r2 = pbw_normal_form(h, w, random_strategy(rng()));
        conf.expect(left == r1 && r1 == r2, [&] { return "tensor word #" + std::to_string(t) + " of defect " + std::to_string(defect(w)); });
        bool ok = true;
        for (const auto& [nw, c] : left) ok = ok && defect(nw) == 0;
        normal.expect(ok, [&] { return "tensor word #" + std::to_string(t); });
    }
    return {"pbw", {conf.done(), normal.done()}};
}

SuiteReport wick_suite(const HSpace& h, int r, int s, int max_index, int max_weight2, int per_shape, const Box& window,
                       Rng& rng) {
    window.validate();
    if (window.dims() != 2) throw std::invalid_argument("wick_suite: window must be two-dimensional");
    Recorder prod("wick_product = product_series"), iter("wick_iterate = iterate_series");
    for (int rr = 0; rr <= r; ++rr)
        for (int ss = 0; ss <= s; ++ss)
            for (int mi = 0; mi <= max_index; ++mi)
                for (int ni = 0; ni <= max_index; ++ni)
                    for (int t = 0; t < per_shape; ++t) {
                        const Word u1 = random_word_of_length(h, rr, mi, rng), u2 = random_word_of_length(h, ss, ni, rng);
                        const FockVector v = random_state(h, max_weight2, 2, rng);
                        const FockVector U1 = FockVector::basis(u1), U2 = FockVector::basis(u2);
                        auto where = [&] { return render_word_list(h, {&u1, &u2}) + ", v = " + render(h, v); };
                        const WindowedSeries wp = apply_series(h, wick_product(h, u1, u2), v, {kX, kY}, window);
                        const WindowedSeries sp = product_series(h, U1, U2, v, window);
                        const WindowedSeries wi = apply_series(h, wick_iterate(h, u1, u2), v, {kX, kY}, window);
                        const WindowedSeries si = iterate_series(h, U1, U2, v, window);
                        bool p_ok = true, i_ok = true;
                        window.for_each([&](const std::vector<int>& e) {
                            p_ok = p_ok && wp.at(e) == sp.at(e);
                            i_ok = i_ok && wi.at(e) == si.at(e);
                        });
                        prod.expect(p_ok, where);
                        iter.expect(i_ok, where);
                    }
    return {"wick", {prod.done(), iter.done()}};
}

SuiteReport weak_associativity_suite(const HSpace& h, int count, int max_weight2, const Box& window, Rng& rng) {
    Recorder eq("weak associativity"), nonvacuous("weak associativity compared nonzero coefficients");
    int equal = 0;
    for (int t = 0; t < count; ++t) {
        const Word u1 = random_word(h, max_weight2, rng), u2 = random_word(h, max_weight2, rng);
        const FockVector w = random_state(h, max_weight2, 2, rng);
        const WeakAssociativityReport rep = check_weak_associativity(h, u1, u2, w, window);
        if (rep.status == WeakAssociativityReport::Status::equal) ++equal;
        eq.expect(rep.status != WeakAssociativityReport::Status::mismatch, [&] {
            std::string s = render_word_list(h, {&u1, &u2}) + ", w = " + render(h, w) + ", P = " + std::to_string(rep.P);
            if (rep.first_mismatch) s += ", at (" + std::to_string((*rep.first_mismatch)[0]) + ", " +
                                         std::to_string((*rep.first_mismatch)[1]) + ")";
            return s;
        });
    }
    nonvacuous.expect(count == 0 || equal > 0, [&] { return std::string("every triple vanished on the window"); });
    return {"weak-associativity", {eq.done(), nonvacuous.done()}};
}

SuiteReport delta_suite(const HSpace& h, const DeltaCoeffs& C, const DeltaSuiteOptions& opt, Rng& rng) {
    Recorder modes("delta_apply = mode definition"), comm("[Delta(x), a(-n-1/2)]"), nil("Delta lowers length by 2 and is nilpotent"),
        tnum("contraction number routes agree"), expd("exp_delta closed form = iterated series"),
        neg("exp-delta commutator with a^(m)(x)^-");
    const int cmax = max_coefficient_index(C);
    const int top = h.dim() - 1;

    if (h.is_default_polarized()) {
        const PolarizedBasis b = default_polarized_basis(h);
        for (int t = 0; t < opt.words; ++t) {
            const FockVector v = random_state(h, 2 * cmax + 6, 3, rng);
            modes.expect(delta_apply(h, C, v) == delta_by_modes(h, C, b, v), [&] { return "v = " + render(h, v); });
        }
    }

    for (int t = 0; t < opt.words; ++t) {
        const FockVector v = random_state(h, 2 * cmax + 6, 3, rng);
        const Gen a = uniform_int(rng, 0, top);
        const int n = uniform_int(rng, 0, cmax + 1);
        const Mode an = creation(a, n);
        ExponentMap lhs = delta_apply(h, C, apply_mode(h, an, v));
        for (const auto& [e, x] : delta_apply(h, C, v)) add_into(lhs, e, -apply_mode(h, an, x));
        ExponentMap rhs;
        for (const auto& [mn, c] : C.entries())
            if (mn.second == n) add_into(rhs, -mn.first - n - 1, apply_mode(h, annihilation(a, mn.first), v) * c);
        comm.expect(lhs == rhs, [&] { return "v = " + render(h, v) + ", a = " + h.gen_name(a) + ", n = " + std::to_string(n); });
    }

    for (int t = 0; t < opt.words; ++t) {
        const int len = uniform_int(rng, 0, opt.max_length);
        const Word w = random_word_of_length(h, len, cmax, rng);
        bool ok = true;
        for (const auto& [e, x] : delta_apply(h, C, w))
            for (const auto& [w2, c] : x.terms()) ok = ok && w2.length() + 2 == w.length();
        ExponentMap power;
        add_into(power, 0, FockVector::basis(w));
        for (int k = 0; k <= len / 2; ++k) power = convolve_delta(h, C, power);
        nil.expect(ok && power.empty(), [&] { return "w = " + render_word(h, w); });
    }

    for (int t = 0; t < opt.words; ++t) {
        const Word w = random_word_of_length(h, opt.t_length, cmax, rng);
        const auto b = contraction_brackets(h, C, w);
        const int r = static_cast<int>(w.length());
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
            std::vector<int> idx;
            for (int i = 0; i < r; ++i)
                if (mask & (1u << i)) idx.push_back(i + 1);
            if (idx.size() % 2) continue;
            std::vector<std::vector<Rational>> sub(idx.size(), std::vector<Rational>(idx.size()));
            for (std::size_t p = 0; p < idx.size(); ++p)
                for (std::size_t q = 0; q < idx.size(); ++q) sub[p][q] = b[idx[p] - 1][idx[q] - 1];
            const Rational T = t_number(b, idx);
            tnum.expect(T == t_number_alt(b, idx) && T == t_number_pairings(b, idx) && T == pfaffian(sub), [&] {
                std::string s = "w = " + render_word(h, w) + ", indices";
                for (int i : idx) s += " " + std::to_string(i);
                return s;
            });
        }
    }

    for (const Word& w : all_words(h, opt.max_length, opt.max_index)) {
        const FockVector v = FockVector::basis(w);
        const ExponentMap closed = exp_delta(h, C, v), iterated = exp_delta_iterative(h, C, v);
        expd.expect(closed == iterated, [&] {
            return "w = " + render_word(h, w) + ": closed " + render_map(h, closed) + " iterated " + render_map(h, iterated);
        });
    }

    std::vector<FockVector> samples;
    for (int t = 0; t < opt.words; ++t) samples.push_back(random_state(h, 2 * cmax + 4, 2, rng));
    for (Gen a = 0; a < h.dim(); ++a) {
        for (int m = 0; m <= 2; ++m) {
            const CheckOutcome o = check_exp_delta_neg_comm(h, C, a, m, samples, opt.window);
            neg.expect(o.passed, [&] { return h.gen_name(a) + ", m = " + std::to_string(m) + ": " + o.counterexample; });
        }
    }

    SuiteReport rep{"delta", {}};
    if (h.is_default_polarized()) rep.checks.push_back(modes.done());
    for (Recorder* r : {&comm, &nil, &tnum, &expd, &neg}) rep.checks.push_back(r->done());
    return rep;
}

SuiteReport correlation_suite(const HSpace& h, int count, int n_insertions, int max_length, const Box& window, Rng& rng) {
    window.validate();
    if (static_cast<int>(window.dims()) != n_insertions)
        throw std::invalid_argument("correlation_suite: one window axis per insertion required");
    Recorder fold("correlation fold order"), den("denominator supported on differences"),
        expand("region expansion = product series");
    std::vector<Var> order;
    for (Var z = 0; z < n_insertions; ++z) order.push_back(z);
    for (int t = 0; t < count; ++t) {
        std::vector<Insertion> ins;
        std::vector<FockVector> us;
        std::string desc;
        for (Var z = 0; z < n_insertions; ++z) {
            ins.push_back({random_word_of_length(h, uniform_int(rng, 1, max_length), 0, rng), z});
            us.push_back(FockVector::basis(ins.back().word));
            desc += render_word(h, ins.back().word) + "@z" + std::to_string(z + 1) + " ";
        }
        auto where = [&] { return desc; };
        const RationalFunction g = correlation(h, ins);
        fold.expect(correlation_right_fold(h, ins) == g, where);
        den.expect(g.monomial_denominator().is_one(), where);
        const RegionExpansion ex = rf_expand_region(g, order, window);
        const WindowedSeries s = multi_product_series(h, us, FockVector::vacuum(), window);
        bool ok = true;
        window.for_each([&](const std::vector<int>& e) { ok = ok && ex.coefficient(e) == s.at(e).coefficient(Word()); });
        expand.expect(ok, where);
    }
    return {"correlation", {fold.done(), den.done(), expand.done()}};
}

}  // namespace mosva
