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
#include "mosva/pbw.hpp"

#include <random>

namespace mosva {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
int uniform_int(Rng& rng, int lo, int hi);

/// Random word of doubled weight <= max_weight2 (possibly the vacuum).
Word random_word(const HSpace& h, int max_weight2, Rng& rng);
/// Random word of length exactly r with every creation index <= max_index.
Word random_word_of_length(const HSpace& h, int r, int max_index, Rng& rng);
/// Combination of up to max_terms random words with small nonzero rational coefficients.
FockVector random_state(const HSpace& h, int max_weight2, int max_terms, Rng& rng);
/// Small nonzero rational such as -3/2.
Rational random_coefficient(Rng& rng);
/// Random tensor word with defect <= max_defect whose levels lie in [-3, 2].
TensorWord random_tensor_word(const HSpace& h, int max_defect, Rng& rng);

}  // namespace mosva
