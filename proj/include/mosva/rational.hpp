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

#include <gmpxx.h>

#include <compare>
#include <climits>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

namespace mosva {

/// Exact rational number, always in lowest terms with a positive denominator.
/// Values whose numerator and denominator fit in int64 are stored inline; only larger
/// values allocate a GMP rational, so every value has exactly one representation.
class Rational {
public:
    Rational() = default;
    Rational(long value) : num_(value) { if (value == kMin) set_big(mpq_class(value)); }  // NOLINT(google-explicit-constructor)
    Rational(int value) : num_(value) {}                                                 // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(const mpq_class& value);

    Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;
    ~Rational() = default;

    /// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
    /// or a zero denominator.
    static Rational parse(std::string_view text);

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    int sign() const { return big_ ? sgn(*big_) : (num_ > 0) - (num_ < 0); }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

    std::string to_string() const;
    mpq_class to_mpq() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o);
    /// Throws std::domain_error on division by zero.
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_) return *a.big_ == *b.big_;
        return false;  // a small value never equals a big one
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    friend Rational binom_uncached(long n, long m);
    static constexpr std::int64_t kMin = INT64_MIN;
    // Stores an arbitrary canonical value, moving it inline when it fits.
    void set_big(mpq_class q);
    // Stores num/den (den > 0, coprime), spilling to GMP outside the int64 range.
    void set_wide(__int128 num, __int128 den);

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;  // set iff the value does not fit inline
};

/// Generalized binomial coefficient n(n-1)...(n-m+1)/m! for any integer n and m >= 0.
Rational binom(long n, long m);

/// (-1)^k as an int.
constexpr int parity_sign(long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace mosva
