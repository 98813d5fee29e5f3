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

#include "mosva/delta.hpp"
#include "mosva/pbw.hpp"
#include "mosva/sampling.hpp"
#include "mosva/vertex.hpp"
#include "mosva/wick.hpp"

#include <string>
#include <vector>

// Independent oracles and seeded property suites shared by the CLI and the acceptance run.
namespace mosva {

/// A basis e'_1..e'_M, f'_1..f'_M of h with (e'_i, f'_j) = delta_ij and (e'_i, e'_j) = (f'_i, f'_j) = 0,
/// each vector given by its coordinates in the generators of h.
struct PolarizedBasis {
    std::vector<std::vector<Rational>> e;
    std::vector<std::vector<Rational>> f;
};

/// The generators themselves. Throws std::invalid_argument unless h is default polarized.
PolarizedBasis default_polarized_basis(const HSpace& h);
/// Throws std::invalid_argument unless the basis is polarized for the form of h.
void validate_polarized_basis(const HSpace& h, const PolarizedBasis& b);

/// Delta(x) v = sum_i sum_{m,n} C_{mn} e_i(m+1/2) f_i(n+1/2) v x^{-m-n-1}, evaluated mode by mode.
ExponentMap delta_by_modes(const HSpace& h, const DeltaCoeffs& C, const PolarizedBasis& b, const FockVector& v);
/// sum_t Delta(x)^t v / t!, iterating delta_apply until it vanishes.
ExponentMap exp_delta_iterative(const HSpace& h, const DeltaCoeffs& C, const FockVector& v);
/// Pfaffian of an even antisymmetric matrix by elimination.
Rational pfaffian(std::vector<std::vector<Rational>> a);

struct SuiteReport {
    std::string suite;
    std::vector<CheckOutcome> checks;
    bool passed() const;
};

/// Anticommutativity of positive modes, the mixed anticommutator, [D, h(k+1/2)] = -k h(k-1/2),
/// weight additivity and theta-oddness of modes, on each sample.
SuiteReport fock_identity_suite(const HSpace& h, const std::vector<FockVector>& samples, Rng& rng);

/// `count` random tensor words of defect <= max_defect reduce to the same normal form under
/// the leftmost rule and two independently seeded random strategies.
SuiteReport pbw_suite(const HSpace& h, int count, int max_defect, Rng& rng);

/// For every shape (r' <= r, s' <= s, indices <= max_index), `per_shape` random word pairs and
/// targets of doubled weight <= max_weight2: the region expansion of wick_product (wick_iterate)
/// equals product_series (iterate_series) on the window.
SuiteReport wick_suite(const HSpace& h, int r, int s, int max_index, int max_weight2, int per_shape,
                       const Box& window, Rng& rng);

/// `count` random triples of doubled weight <= max_weight2 pass check_weak_associativity.
SuiteReport weak_associativity_suite(const HSpace& h, int count, int max_weight2, const Box& window, Rng& rng);

struct DeltaSuiteOptions {
    int words = 10;         // random words per check
    int max_length = 6;     // closed vs iterative runs on every word up to this length
    int max_index = 1;      // creation indices of the enumerated words
    int t_length = 8;       // words whose even index subsets are compared across T routes
    Box window = Box::uniform(2, -4, 4);
};

/// delta_apply against the mode definition, [Delta(x), a(-n-1/2)], length lowering and
/// nilpotency, the three contraction-number routes and the Pfaffian, closed vs iterative
/// exp(Delta), and the commutator with a^{(m)}(x)^-.
SuiteReport delta_suite(const HSpace& h, const DeltaCoeffs& C, const DeltaSuiteOptions& opt, Rng& rng);

/// `count` correlations of n_insertions random words of length <= max_length: fold-order
/// independence, denominators supported on differences only, and agreement of the region
/// expansion with multi_product_series on the window.
SuiteReport correlation_suite(const HSpace& h, int count, int n_insertions, int max_length, const Box& window,
                              Rng& rng);

}  // namespace mosva
