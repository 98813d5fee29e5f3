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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mosva {

/// Generator index into the basis of h: 0..M-1 are e_1..e_M, M..2M-1 are f_1..f_M
/// (f_i is the dual partner of e_i in the default polarized pairing).
using Gen = int;

/// The 2M-dimensional space h with a nondegenerate symmetric bilinear form.
class HSpace {
public:
    /// Default polarized form: (e_i, f_j) = delta_ij, (e_i, e_j) = (f_i, f_j) = 0.
    /// M = 0 is allowed; V is then spanned by the vacuum.
    explicit HSpace(int M);
    /// Arbitrary Gram matrix in the basis e_1..e_M, f_1..f_M. Throws std::invalid_argument
    /// unless it is 2M x 2M, symmetric and nondegenerate.
    HSpace(int M, std::vector<std::vector<Rational>> gram);

    int M() const { return M_; }
    int dim() const { return 2 * M_; }
    /// Throws std::out_of_range for invalid generators.
    const Rational& pair(Gen a, Gen b) const;
    bool is_default_polarized() const;

    Gen e(int i) const { return i - 1; }      // 1-based
    Gen f(int i) const { return M_ + i - 1; } // 1-based
    std::string gen_name(Gen g) const;
    std::optional<Gen> parse_gen(std::string_view name) const;

private:
    int M_;
    std::vector<std::vector<Rational>> gram_;
};

/// The operator h_gen(level + 1/2). Creation iff level < 0.
struct Mode {
    Gen gen;
    int level;

    bool is_creation() const { return level < 0; }
    /// For a creation mode h(-m-1/2), the index m = -level-1.
    int creation_index() const { return -level - 1; }
    /// Weight of the operator, doubled: -2*level - 1.
    int weight2() const { return -2 * level - 1; }

    friend bool operator==(const Mode&, const Mode&) = default;
    friend auto operator<=>(const Mode&, const Mode&) = default;
};

inline Mode creation(Gen g, int m) { return Mode{g, -m - 1}; }
inline Mode annihilation(Gen g, int m) { return Mode{g, m}; }

/// A product of creation modes applied to the vacuum, leftmost mode applied last.
/// Ordered by length first, then lexicographically on (gen, level).
class Word {
public:
    Word() = default;
    /// Throws std::invalid_argument if a mode is not a creation mode.
    explicit Word(std::vector<Mode> modes);

    std::size_t length() const { return modes_.size(); }
    bool is_vacuum() const { return modes_.empty(); }
    const std::vector<Mode>& modes() const { return modes_; }
    const Mode& operator[](std::size_t i) const { return modes_[i]; }

    /// sum_i m_i + r/2, doubled.
    int weight2() const;
    /// r mod 2.
    int parity() const { return static_cast<int>(modes_.size() % 2); }
    /// The word with the listed 0-based positions removed (positions must be sorted).
    Word without(std::span<const std::size_t> positions) const;
    Word prepended(const Mode& m) const;

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& a, const Word& b);

private:
    std::vector<Mode> modes_;
};

/// Finite rational combination of words; an element of V.
class FockVector {
public:
    using Terms = std::map<Word, Rational>;

    FockVector() = default;
    static FockVector vacuum();
    static FockVector basis(const Word& w, const Rational& c = Rational(1));

    void add_term(const Word& w, const Rational& c);
    void add_term(Word&& w, const Rational& c);
    Rational coefficient(const Word& w) const;
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }
    /// Largest doubled weight among the stored words; -1 for the zero vector.
    int max_weight2() const;
    /// True if all words have the same weight.
    bool is_homogeneous() const;

    FockVector& operator+=(const FockVector& o);
    FockVector& operator-=(const FockVector& o);
    FockVector& operator*=(const Rational& c);
    FockVector operator-() const;
    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
    friend FockVector operator*(FockVector a, const Rational& c) { return a *= c; }
    friend FockVector operator*(const Rational& c, FockVector a) { return a *= c; }
    friend bool operator==(const FockVector&, const FockVector&) = default;

private:
    Terms terms_;
};

struct AlgebraConfig {
    HSpace hspace;
    /// Scalar by which the central element acts on the vacuum. Not used by the mode action.
    Rational central_scalar{1};
};

/// Applies a single mode. Creation modes prepend; annihilation modes contract with each
/// creation mode through {a(m+1/2), b(-n-1/2)} = (a,b) delta_mn with alternating signs.
FockVector apply_mode(const HSpace& h, const Mode& m, const FockVector& v);
/// Applies modes right to left: the last mode acts first.
FockVector apply_modes(const HSpace& h, std::span<const Mode> ms, const FockVector& v);
/// Applies sum_g coeffs[g] * g(level+1/2).
FockVector apply_mode_combination(const HSpace& h, const std::vector<Rational>& coeffs, int level,
                                  const FockVector& v);

/// Weight as a rational number (half-integer).
Rational weight(const Word& w);
FockVector theta(const FockVector& v);
/// The translation operator D.
FockVector d_op(const FockVector& v);
/// The grading operator: scales each word by its weight.
FockVector grading_op(const FockVector& v);

/// Every word of weight <= max_weight2 / 2 over the generators of h, in canonical order.
std::vector<Word> words_up_to_weight(const HSpace& h, int max_weight2);

std::string render_word(const HSpace& h, const Word& w);
std::string render(const HSpace& h, const FockVector& v);

}  // namespace mosva
