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
#include "mosva/fock.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mosva::cli {

struct Config {
    HSpace hspace{1};
    Rational central_scalar{1};
    DeltaCoeffs delta = DeltaCoeffs::default_fixture();
};

/// Parses the JSON configuration text. Throws std::invalid_argument with a message on any
/// schema, Gram or antisymmetry violation.
Config parse_config(std::string_view json_text);

/// Parses a state such as "-|0> + 2/3 * e1(-1/2) f1(-3/2) |0>". Whitespace is ignored; modes
/// act right to left on the vacuum, so annihilation modes are allowed. Throws std::invalid_argument.
FockVector parse_state(const HSpace& h, std::string_view text);

/// Runs the command line (without the program name). JSON lines go to `out`, the human summary
/// and diagnostics to `err`. Returns 0 on success, 1 on an identity failure, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mosva::cli
