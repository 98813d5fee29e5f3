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

#include "mosva/sampling.hpp"

namespace mosva {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational random_coefficient(Rng& rng) {
    const int num = uniform_int(rng, 1, 3) * (uniform_int(rng, 0, 1) ? 1 : -1);
    return Rational(num, uniform_int(rng, 1, 2));
}

Word random_word(const HSpace& h, int max_weight2, Rng& rng) {
    std::vector<Mode> ms;
    int budget = max_weight2;
    while (budget >= 1 && h.dim() > 0 && uniform_int(rng, 0, 3) != 0) {
        const int m = uniform_int(rng, 0, (budget - 1) / 2);
        ms.push_back(creation(uniform_int(rng, 0, h.dim() - 1), m));
        budget -= 2 * m + 1;
    }
    return Word(std::move(ms));
}

Word random_word_of_length(const HSpace& h, int r, int max_index, Rng& rng) {
    std::vector<Mode> ms;
    for (int i = 0; i < r; ++i) ms.push_back(creation(uniform_int(rng, 0, h.dim() - 1), uniform_int(rng, 0, max_index)));
    return Word(std::move(ms));
}

FockVector random_state(const HSpace& h, int max_weight2, int max_terms, Rng& rng) {
    FockVector v;
    const int n = uniform_int(rng, 1, max_terms);
    for (int i = 0; i < n; ++i) v.add_term(random_word(h, max_weight2, rng), random_coefficient(rng));
    return v;
}

TensorWord random_tensor_word(const HSpace& h, int max_defect, Rng& rng) {
    while (true) {
        TensorWord w;
        const int len = uniform_int(rng, 1, 6);
        for (int i = 0; i < len; ++i) {
            if (uniform_int(rng, 0, 5) == 0)
                w.push_back(TensorEntry::k());
            else
                w.push_back(TensorEntry::of(Mode{uniform_int(rng, 0, h.dim() - 1), uniform_int(rng, -3, 2)}));
        }
        if (defect(w) <= max_defect) return w;
    }
}

}  // namespace mosva
