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

#include "mosva/fock.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace mosva {

/// One tensor factor: a mode (either sign of level) or the central element k.
struct TensorEntry {
    bool central = false;
    Mode mode{0, 0};  // ignored when central

    static TensorEntry k() { return TensorEntry{true, Mode{0, 0}}; }
    static TensorEntry of(const Mode& m) { return TensorEntry{false, m}; }

    friend bool operator==(const TensorEntry& a, const TensorEntry& b) {
        return a.central == b.central && (a.central || a.mode == b.mode);
    }
    friend std::strong_ordering operator<=>(const TensorEntry& a, const TensorEntry& b) {
        if (auto c = a.central <=> b.central; c != 0) return c;
        if (a.central) return std::strong_ordering::equal;
        return a.mode <=> b.mode;
    }
};

using TensorWord = std::vector<TensorEntry>;
using TensorCombination = std::map<TensorWord, Rational>;

/// Number of pairs i < j that are of wrong order: a positive mode before a negative one,
/// or k before any mode.
int defect(const TensorWord& w);
/// 0-based positions i such that (w[i], w[i+1]) is of wrong order. Empty iff defect is 0.
std::vector<std::size_t> wrong_order_positions(const TensorWord& w);

/// One straightening step at the adjacent wrong-order pair (i, i+1):
///   a(m+1/2) b(n+1/2) -> -b(n+1/2) a(m+1/2) + m (a,b) delta_{m+n+1,0} k   (m >= 0 > n)
///   k a(n+1/2)        -> a(n+1/2) k
/// Throws std::invalid_argument if the pair is not of wrong order.
TensorCombination pbw_rewrite(const HSpace& h, const TensorWord& w, std::size_t i);

/// Picks which wrong-order position to rewrite; receives the word and its candidates.
using ReductionStrategy = std::function<std::size_t(const TensorWord&, const std::vector<std::size_t>&)>;

/// Reduces to a combination of defect-0 words (negative modes, then positive modes, then k's).
/// The default strategy rewrites the leftmost wrong-order pair.
TensorCombination pbw_normal_form(const HSpace& h, const TensorWord& w);
TensorCombination pbw_normal_form(const HSpace& h, const TensorWord& w, const ReductionStrategy& strategy);

/// Strategy choosing uniformly at random among candidates from a seeded generator.
ReductionStrategy random_strategy(std::uint64_t seed);

}  // namespace mosva
