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

#include "mosva/pbw.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <stdexcept>

namespace mosva {

namespace {

// 0: negative mode, 1: positive mode, 2: k. Wrong order is exactly a strict descent.
int entry_class(const TensorEntry& e) {
    if (e.central) return 2;
    return e.mode.level < 0 ? 0 : 1;
}

void accumulate(TensorCombination& out, const TensorWord& w, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = out.try_emplace(w, c);
    if (inserted) return;
    it->second = it->second + c;
    if (it->second.is_zero()) out.erase(it);
}

}  // namespace

int defect(const TensorWord& w) {
    int count[3] = {0, 0, 0};
    int d = 0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const int c = entry_class(*it);
        for (int lower = 0; lower < c; ++lower) d += count[lower];
        ++count[c];
    }
    return d;
}

std::vector<std::size_t> wrong_order_positions(const TensorWord& w) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (entry_class(w[i]) > entry_class(w[i + 1])) out.push_back(i);
    return out;
}

TensorCombination pbw_rewrite(const HSpace& h, const TensorWord& w, std::size_t i) {
    if (i + 1 >= w.size() || entry_class(w[i]) <= entry_class(w[i + 1]))
        throw std::invalid_argument("pbw_rewrite: not a wrong-order adjacent pair");
    TensorCombination out;
    TensorWord swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    if (w[i].central) {
        accumulate(out, swapped, Rational(1));
        return out;
    }
    accumulate(out, swapped, Rational(-1));
    const Mode& a = w[i].mode;
    const Mode& b = w[i + 1].mode;
    if (a.level + b.level + 1 == 0 && a.level != 0) {
        const Rational c = Rational(a.level) * h.pair(a.gen, b.gen);
        if (!c.is_zero()) {
            TensorWord contracted(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            contracted.push_back(TensorEntry::k());
            contracted.insert(contracted.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
            accumulate(out, contracted, c);
        }
    }
    return out;
}

TensorCombination pbw_normal_form(const HSpace& h, const TensorWord& w) {
    return pbw_normal_form(h, w, [](const TensorWord&, const std::vector<std::size_t>& c) { return c.front(); });
}

TensorCombination pbw_normal_form(const HSpace& h, const TensorWord& w, const ReductionStrategy& strategy) {
    // Each rewrite lowers the defect or the degree, so the pending set drains.
    TensorCombination done, pending;
    accumulate(pending, w, Rational(1));
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        const TensorWord& word = node.key();
        const std::vector<std::size_t> pos = wrong_order_positions(word);
        if (pos.empty()) {
            accumulate(done, word, node.mapped());
            continue;
        }
        const std::size_t i = strategy(word, pos);
        if (std::find(pos.begin(), pos.end(), i) == pos.end())
            throw std::logic_error("pbw_normal_form: strategy chose a position that is not of wrong order");
        for (const auto& [nw, c] : pbw_rewrite(h, word, i)) accumulate(pending, nw, c * node.mapped());
    }
    return done;
}

ReductionStrategy random_strategy(std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed);
    return [rng](const TensorWord&, const std::vector<std::size_t>& c) {
        return c[std::uniform_int_distribution<std::size_t>(0, c.size() - 1)(*rng)];
    };
}

}  // namespace mosva
