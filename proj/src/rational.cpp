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

#include "mosva/rational.hpp"

#include <stdexcept>
#include <vector>

namespace mosva {

Rational binom_uncached(long n, long m);

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kLo = -static_cast<i128>(INT64_MAX);
constexpr i128 kHi = INT64_MAX;

u128 abs128(i128 x) { return x < 0 ? -static_cast<u128>(x) : static_cast<u128>(x); }

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        const u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

mpz_class to_mpz(i128 x) {
    const u128 m = abs128(x);
    mpz_class hi(static_cast<unsigned long>(m >> 64)), lo(static_cast<unsigned long>(m & ~std::uint64_t{0}));
    mpz_class r = (hi << 64) + lo;
    return x < 0 ? mpz_class(-r) : r;
}

}  // namespace

void Rational::set_wide(i128 num, i128 den) {
    if (num >= kLo && num <= kHi && den <= kHi) {
        num_ = static_cast<std::int64_t>(num);
        den_ = static_cast<std::int64_t>(den);
        big_.reset();
        return;
    }
    mpq_class q(to_mpz(num), to_mpz(den));
    big_ = std::make_unique<mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
}

void Rational::set_big(mpq_class q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != kMin) {
        num_ = n.get_si();
        den_ = d.get_si();
        big_.reset();
        return;
    }
    big_ = std::make_unique<mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    mpq_class q(to_mpz(num_), to_mpz(den_));
    return q;
}

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    set_big(std::move(q));
}

Rational::Rational(const mpq_class& value) {
    mpq_class q(value);
    q.canonicalize();
    set_big(std::move(q));
}

Rational Rational::operator-() const {
    Rational r;
    if (big_)
        r.set_big(mpq_class(-*big_));
    else
        r.set_wide(-static_cast<i128>(num_), den_);
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (big_ || o.big_) {
        set_big(to_mpq() + o.to_mpq());
        return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
        set_wide(static_cast<i128>(num_) + o.num_, 1);
        return *this;
    }
    const u128 g = gcd128(static_cast<u128>(den_), static_cast<u128>(o.den_));
    const i128 t = static_cast<i128>(num_) * (o.den_ / static_cast<std::int64_t>(g)) +
                   static_cast<i128>(o.num_) * (den_ / static_cast<std::int64_t>(g));
    const u128 g2 = gcd128(abs128(t), g);
    const i128 den = static_cast<i128>(den_ / static_cast<std::int64_t>(g)) * (o.den_ / static_cast<std::int64_t>(g2));
    if (t == 0) {
        set_wide(0, 1);
        return *this;
    }
    set_wide(t / static_cast<i128>(g2), den);
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    if (big_ || o.big_) {
        set_big(to_mpq() * o.to_mpq());
        return *this;
    }
    if (num_ == 0 || o.num_ == 0) {
        set_wide(0, 1);
        return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
        set_wide(static_cast<i128>(num_) * o.num_, 1);
        return *this;
    }
    const std::int64_t g1 = static_cast<std::int64_t>(gcd128(abs128(num_), static_cast<u128>(o.den_)));
    const std::int64_t g2 = static_cast<std::int64_t>(gcd128(abs128(o.num_), static_cast<u128>(den_)));
    set_wide(static_cast<i128>(num_ / g1) * (o.num_ / g2), static_cast<i128>(den_ / g2) * (o.den_ / g1));
    return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        const i128 l = static_cast<i128>(a.num_) * b.den_, r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rational Rational::parse(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') s.push_back(c);
    }
    auto valid_int = [](std::string_view part, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i >= part.size()) return false;
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') return false;
        }
        return true;
    };
    const auto slash = s.find('/');
    const std::string num = s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
}

std::string Rational::to_string() const {
    if (big_) return big_->get_str(10);
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    Rational inv;
    if (o.big_) {
        inv.set_big(mpq_class(1) / *o.big_);
    } else {
        const i128 n = o.num_ < 0 ? -static_cast<i128>(o.den_) : o.den_;
        inv.set_wide(n, abs128(o.num_));
    }
    return *this *= inv;
}

Rational binom(long n, long m) {
    if (m < 0) return Rational(0);
    // Small arguments dominate the series engines; they come from a table.
    constexpr long kSpan = 48;
    if (m < kSpan && n > -kSpan && n < kSpan) {
        static const std::vector<Rational> table = [] {
            std::vector<Rational> t;
            t.reserve(static_cast<std::size_t>(2 * kSpan * kSpan));
            for (long nn = -kSpan + 1; nn < kSpan; ++nn)
                for (long mm = 0; mm < kSpan; ++mm) t.push_back(binom_uncached(nn, mm));
            return t;
        }();
        return table[static_cast<std::size_t>((n + kSpan - 1) * kSpan + m)];
    }
    return binom_uncached(n, m);
}

Rational binom_uncached(long n, long m) {
    // Exact in int128 while the running product stays small: r_i = binom(n, i) is integral.
    i128 r = 1;
    bool small = true;
    for (long i = 0; i < m && small; ++i) {
        const i128 f = static_cast<i128>(n) - i;
        if (abs128(f) > (u128{1} << 24) || abs128(r) > (u128{1} << 100)) {
            small = false;
            break;
        }
        r = r * f / (i + 1);
    }
    if (small) {
        Rational out;
        out.set_wide(r, 1);
        return out;
    }
    mpz_class num = 1;
    mpz_class den = 1;
    for (long i = 0; i < m; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return Rational(mpq_class(num, den));
}

}  // namespace mosva
