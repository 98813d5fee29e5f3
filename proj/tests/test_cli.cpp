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

#include "doctest.h"

#include "cli.hpp"
#include "mosva/sampling.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mosva;
using mosva::cli::parse_config;
using mosva::cli::parse_state;

namespace {

const HSpace H2(2);

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> lines(const std::string& text) {
    std::vector<nlohmann::json> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
    return out;
}

std::string write_config(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_CASE("parse_state") {
    const Word ef({creation(0, 0), creation(2, 1)});
    CHECK(parse_state(H2, "|0>") == FockVector::vacuum());
    CHECK(parse_state(H2, "0").is_zero());
    CHECK(parse_state(H2, "e1(-1/2) f1(-3/2) |0>") == FockVector::basis(ef));
    CHECK(parse_state(H2, " -  2/3*e1(-1/2)f1( -3/2 )|0> + |0> ") ==
          FockVector::vacuum() - FockVector::basis(ef, Rational(2, 3)));
    CHECK(parse_state(H2, "3 |0> - 3 * |0>").is_zero());
    // modes act on the vacuum from the right, so annihilation modes are allowed
    CHECK(parse_state(H2, "e1(1/2) f1(-1/2) |0>") == FockVector::vacuum());
    CHECK(parse_state(H2, "e1(1/2) |0>").is_zero());

    for (const char* bad : {"", "e3(-1/2)|0>", "e1(-1)|0>", "e1(-2/2)|0>", "e1(-1/2)", "|0>|0>", "e1-1/2)|0>", "2/ |0>"})
        CHECK_THROWS_AS(parse_state(H2, bad), std::invalid_argument);
}

TEST_CASE("parse_state round-trips render") {
    Rng rng(17);
    for (int t = 0; t < 50; ++t) {
        const FockVector v = random_state(H2, 6, 4, rng);
        const std::string text = render(H2, v);
        CHECK(parse_state(H2, text) == v);
        CHECK(render(H2, parse_state(H2, text)) == text);
    }
}

TEST_CASE("parse_config") {
    const cli::Config d = parse_config(R"({"M": 1})");
    CHECK(d.hspace.M() == 1);
    CHECK(d.central_scalar == Rational(1));
    CHECK(d.delta(0, 1) == Rational(1));

    const cli::Config c = parse_config(
        R"({"M": 1, "gram": [["0", "2"], ["2", "1/3"]], "l": "5/2", "delta_coeffs": [[0, 2, "3/4"], [1, 3, 1]]})");
    CHECK(c.hspace.pair(0, 1) == Rational(2));
    CHECK(c.hspace.pair(1, 1) == Rational(1, 3));
    CHECK(c.central_scalar == Rational(5, 2));
    CHECK(c.delta(2, 0) == Rational(-3, 4));
    CHECK(c.delta(3, 1) == Rational(-1));
    CHECK(c.delta(0, 1).is_zero());

    for (const char* bad : {R"({"M": 0})", R"({"M": 1.5})", R"({})", R"([1])", R"({"M": 1, "extra": 1})",
                            R"({"M": 1, "gram": [["1", "0"], ["0"]]})", R"({"M": 1, "gram": [["1", "2"], ["3", "1"]]})",
                            R"({"M": 1, "gram": [["1", "1"], ["1", "1"]]})", R"({"M": 1, "gram": [["1", "0"], ["0", "a"]]})",
                            R"({"M": 1, "delta_coeffs": [[0, 1, "1"], [1, 0, "1"]]})",
                            R"({"M": 1, "delta_coeffs": [[1, 1, "1"]]})", R"({"M": 1, "delta_coeffs": [[0, 1]]})", "{"})
        CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
}

TEST_CASE("check subcommand") {
    Run r = run({"check", "--suite", "pbw", "--samples", "5"});
    CHECK(r.code == 0);
    auto js = lines(r.out);
    REQUIRE(js.size() == 3);
    CHECK(js[0]["suite"] == "pbw");
    CHECK(js[0]["passed"] == true);
    CHECK(js.back()["summary"]["passed"] == true);

    r = run({"check", "--suite", "axioms", "--max-weight", "1", "--samples", "6", "--window=-3,3"});
    CHECK(r.code == 0);
    CHECK(r.err.find("checks passed") != std::string::npos);

    r = run({"check", "--suite", "wick", "--r", "1", "--s", "1", "--samples", "3"});
    CHECK(r.code == 0);

    const std::string cfg = write_config("mosva_test_m2.json", R"({"M": 2, "delta_coeffs": [[0, 2, "1/2"], [1, 2, "-1"]]})");
    r = run({"--config", cfg, "check", "--suite", "delta", "--samples", "3"});
    CHECK(r.code == 0);

    // same seed, same bytes
    const Run a = run({"check", "--suite", "all", "--samples", "3", "--seed", "11", "--window=-2,2"});
    const Run b = run({"check", "--suite", "all", "--samples", "3", "--seed", "11", "--window=-2,2"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("usage errors exit with 2") {
    const std::string bad = write_config("mosva_test_bad.json", R"({"M": 1, "gram": [["1", "0"], ["0", "x"]]})");
    CHECK(run({"--config", bad, "check"}).code == 2);
    CHECK(run({"--config", "/nonexistent/mosva.json", "check"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"check", "--suite", "nope"}).code == 2);
    CHECK(run({"check", "--window=3,-3"}).code == 2);
    CHECK(run({"check", "--max-weight", "1/3"}).code == 2);
    CHECK(run({"correlate", "e1(-1/2)|0>@z1", "f1(-1/2)|0>@z1"}).code == 2);
    CHECK(run({"correlate", "e1(-1/2)|0>"}).code == 2);
    CHECK(run({"expdelta", "e9(-1/2)|0>"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("correlate subcommand") {
    Run r = run({"correlate", "e1(-1/2)|0>@z1", "f1(-1/2)|0>@z2"});
    CHECK(r.code == 0);
    CHECK(lines(r.out)[0]["correlation"] == "(1) / (z1 - z2)");
    r = run({"correlate", "f1(-1/2)|0>@z1", "e1(-3/2)|0>@z2"});
    CHECK(lines(r.out)[0]["correlation"] == "(1) / (z1 - z2)^2");
    r = run({"correlate", "e1(-1/2)|0>@z1", "f1(-1/2)|0>@z2", "e1(-1/2)|0>@z3"});
    CHECK(lines(r.out)[0]["correlation"] == "0");
    r = run({"correlate", "e1(-1/2)|0>@z1"});
    CHECK(lines(r.out)[0]["correlation"] == "0");
    r = run({"correlate", "2 * e1(-1/2)|0> + f1(-1/2)|0>@a", "f1(-1/2)|0> - e1(-1/2)|0>@b"});
    CHECK(lines(r.out)[0]["correlation"] == "(1) / (a - b)");
}

TEST_CASE("expand subcommand") {
    // 1/(z1 - z2) = sum_{k>=0} z1^{-k-1} z2^k in |z1| > |z2|
    Run r = run({"expand", "e1(-1/2)|0>@z1", "f1(-1/2)|0>@z2", "--window=-3,2", "--cross-check"});
    CHECK(r.code == 0);
    auto js = lines(r.out);
    REQUIRE(js.size() == 4);
    CHECK(js[0]["exponents"] == nlohmann::json::array({-3, 2}));
    CHECK(js[2]["exponents"] == nlohmann::json::array({-1, 0}));
    CHECK(js[2]["coefficient"] == "1");
    CHECK(js[3]["summary"]["cross_check"] == true);

    // the opposite region: -1/(z2 - z1) expanded in |z2| > |z1|
    r = run({"expand", "e1(-1/2)|0>@z1", "f1(-1/2)|0>@z2", "--order", "z2,z1", "--window=-3,2"});
    js = lines(r.out);
    CHECK(js[0]["exponents"] == nlohmann::json::array({-3, 2}));
    CHECK(js[0]["coefficient"] == "-1");

    r = run({"expand", "|0>@z1", "--window=0,0"});
    js = lines(r.out);
    REQUIRE(js.size() == 2);
    CHECK(js[0]["coefficient"] == "1");

    CHECK(run({"expand", "|0>@z1", "|0>@z2", "--order", "z2,z1", "--cross-check"}).code == 2);
    CHECK(run({"expand", "|0>@z1", "--order", "w"}).code == 2);
}

TEST_CASE("expdelta subcommand") {
    Run r = run({"expdelta", "|0>", "--check-iterative"});
    CHECK(r.code == 0);
    auto js = lines(r.out);
    REQUIRE(js.size() == 2);
    CHECK(js[0]["exponent"] == 0);
    CHECK(js[0]["state"] == "|0>");
    CHECK(js[1]["summary"]["closed_equals_iterative"] == true);

    r = run({"expdelta", "e1(-1/2) f1(-3/2) |0>"});
    js = lines(r.out);
    REQUIRE(js.size() == 2);
    CHECK(js[0]["exponent"] == -2);
    CHECK(js[0]["state"] == "-|0>");
    CHECK(js[1]["state"] == "e1(-1/2) f1(-3/2) |0>");
}
