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

#include "cli.hpp"

#include "mosva/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mosva::cli {

namespace {

using Json = nlohmann::ordered_json;

Rational rational_field(const nlohmann::json& j, const std::string& what) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw std::invalid_argument(what + ": expected a rational string such as \"3/2\"");
}

int int_field(const nlohmann::json& j, const std::string& what) {
    if (!j.is_number_integer()) throw std::invalid_argument(what + ": expected an integer");
    return j.get<int>();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// "a,b" for every axis, or one "lo,hi" pair per axis.
Box parse_window(const std::string& text, std::size_t dims) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int x = 0;
        try {
            x = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != item.size()) throw std::invalid_argument("window: malformed bound '" + item + "'");
        v.push_back(x);
    }
    Box b;
    if (v.size() == 2) {
        b = Box::uniform(dims, v[0], v[1]);
    } else if (v.size() == 2 * dims) {
        for (std::size_t k = 0; k < dims; ++k) {
            b.lo.push_back(v[2 * k]);
            b.hi.push_back(v[2 * k + 1]);
        }
    } else {
        throw std::invalid_argument("window: expected lo,hi or " + std::to_string(dims) + " lo,hi pairs");
    }
    b.validate();
    return b;
}

int parse_max_weight2(const std::string& text) {
    const Rational w = Rational::parse(text);
    const Rational w2 = w * Rational(2);
    if (w.sign() < 0 || !w2.is_integer() || w2 > Rational(40))
        throw std::invalid_argument("--max-weight: expected a half-integer in [0, 20]");
    return static_cast<int>(w2.to_mpq().get_num().get_si());
}

struct Insertions {
    std::vector<FockVector> states;
    std::vector<std::string> names;
};

Insertions parse_insertions(const HSpace& h, const std::vector<std::string>& items) {
    Insertions ins;
    for (const std::string& item : items) {
        const auto at = item.rfind('@');
        if (at == std::string::npos) throw std::invalid_argument("insertion '" + item + "': expected STATE@VARIABLE");
        std::string name = item.substr(at + 1);
        name.erase(std::remove_if(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c); }), name.end());
        if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])) ||
            !std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; }))
            throw std::invalid_argument("insertion '" + item + "': malformed variable name");
        if (std::find(ins.names.begin(), ins.names.end(), name) != ins.names.end())
            throw std::invalid_argument("duplicate variable " + name);
        ins.states.push_back(parse_state(h, item.substr(0, at)));
        ins.names.push_back(name);
    }
    return ins;
}

// Multilinear extension of the word correlation to combinations.
RationalFunction state_correlation(const HSpace& h, const std::vector<FockVector>& states) {
    RationalFunction out;
    std::vector<Insertion> cur;
    auto rec = [&](auto&& self, std::size_t i, const Rational& c) -> void {
        if (i == states.size()) {
            out += correlation(h, cur) * c;
            return;
        }
        for (const auto& [w, a] : states[i].terms()) {
            cur.push_back({w, static_cast<Var>(i)});
            self(self, i + 1, c * a);
            cur.pop_back();
        }
    };
    rec(rec, 0, Rational(1));
    return out;
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

struct Common {
    std::string config_path;
    bool json = true;
};

Config load_config(const Common& c) {
    return c.config_path.empty() ? Config{} : parse_config(read_file(c.config_path));
}

int report_suites(const std::vector<SuiteReport>& reports, std::ostream& out, std::ostream& err) {
    int failed = 0, total = 0;
    for (const SuiteReport& rep : reports) {
        for (const CheckOutcome& c : rep.checks) {
            ++total;
            if (!c.passed) ++failed;
            Json j{{"suite", rep.suite}, {"check", c.name}, {"passed", c.passed}, {"cases", c.cases}};
            if (!c.passed) j["counterexample"] = c.counterexample;
            emit(out, j);
            err << (c.passed ? "PASS " : "FAIL ") << rep.suite << ": " << c.name << " (" << c.cases << " cases)";
            if (!c.passed) err << "\n     counterexample: " << c.counterexample;
            err << '\n';
        }
    }
    emit(out, Json{{"summary", {{"checks", total}, {"failed", failed}, {"passed", failed == 0}}}});
    err << (total - failed) << "/" << total << " checks passed\n";
    return failed ? 1 : 0;
}

struct CheckArgs {
    std::string suite = "all";
    std::uint64_t seed = 1;
    std::string max_weight = "2";
    int r = 2, s = 2, samples = 20;
    std::string window = "-4,4";
};

int cmd_check(const Config& cfg, const CheckArgs& a, std::ostream& out, std::ostream& err) {
    const HSpace& h = cfg.hspace;
    const int w2 = parse_max_weight2(a.max_weight);
    const Box window1 = parse_window(a.window, 1), window2 = parse_window(a.window, 2);
    if (a.r < 0 || a.s < 0 || a.samples < 1) throw std::invalid_argument("--r, --s must be >= 0 and --samples >= 1");
    Rng rng(a.seed);
    const bool all = a.suite == "all";
    std::vector<SuiteReport> reports;
    if (all || a.suite == "axioms") {
        std::vector<FockVector> samples;
        for (int i = 0; i < a.samples; ++i) samples.push_back(random_state(h, w2, 3, rng));
        const AxiomReport ax = check_axioms(h, samples, window1.lo[0], window1.hi[0]);
        reports.push_back({"axioms", ax.checks});
        reports.push_back(fock_identity_suite(h, samples, rng));
        reports.push_back(weak_associativity_suite(h, a.samples, w2, window2, rng));
    }
    if (all || a.suite == "wick") {
        reports.push_back(wick_suite(h, a.r, a.s, 2, w2, 1, window2, rng));
        reports.push_back(correlation_suite(h, a.samples, 3, 2, Box::uniform(3, -3, 1), rng));
    }
    if (all || a.suite == "delta") {
        DeltaSuiteOptions opt;
        opt.words = a.samples;
        opt.max_length = h.M() == 1 ? 6 : 4;
        opt.window = window2;
        reports.push_back(delta_suite(h, cfg.delta, opt, rng));
    }
    if (all || a.suite == "pbw") reports.push_back(pbw_suite(h, 10 * a.samples, 4, rng));
    return report_suites(reports, out, err);
}

int cmd_correlate(const Config& cfg, const std::vector<std::string>& items, std::ostream& out, std::ostream& err) {
    const Insertions ins = parse_insertions(cfg.hspace, items);
    const std::string text = state_correlation(cfg.hspace, ins.states).render(ins.names);
    emit(out, Json{{"variables", ins.names}, {"correlation", text}});
    err << text << '\n';
    return 0;
}

int cmd_expand(const Config& cfg, const std::vector<std::string>& items, const std::string& order_text,
               const std::string& window_text, bool cross_check, std::ostream& out, std::ostream& err) {
    const Insertions ins = parse_insertions(cfg.hspace, items);
    std::vector<Var> order;
    if (order_text.empty()) {
        for (std::size_t i = 0; i < ins.names.size(); ++i) order.push_back(static_cast<Var>(i));
    } else {
        std::stringstream ss(order_text);
        std::string name;
        while (std::getline(ss, name, ',')) {
            const auto it = std::find(ins.names.begin(), ins.names.end(), name);
            if (it == ins.names.end()) throw std::invalid_argument("--order: unknown variable " + name);
            const Var v = static_cast<Var>(it - ins.names.begin());
            if (std::find(order.begin(), order.end(), v) != order.end())
                throw std::invalid_argument("--order: repeated variable " + name);
            order.push_back(v);
        }
        if (order.size() != ins.names.size()) throw std::invalid_argument("--order must list every variable once");
    }
    const Box window = parse_window(window_text, ins.names.size());
    const RegionExpansion ex = rf_expand_region(state_correlation(cfg.hspace, ins.states), order, window);

    std::vector<std::string> ordered_names;
    for (Var v : order) ordered_names.push_back(ins.names[v]);
    std::size_t nonzero = 0;
    window.for_each([&](const std::vector<int>& e) {
        const Rational c = ex.coefficient(e);
        if (c.is_zero()) return;
        ++nonzero;
        emit(out, Json{{"exponents", e}, {"coefficient", c.to_string()}});
    });

    Json summary{{"order", ordered_names}, {"window_lo", window.lo}, {"window_hi", window.hi}, {"nonzero", nonzero}};
    int code = 0;
    if (cross_check) {
        for (std::size_t i = 0; i < order.size(); ++i)
            if (order[i] != static_cast<Var>(i))
                throw std::invalid_argument("--cross-check needs the region order to follow the insertion order");
        const WindowedSeries s = multi_product_series(cfg.hspace, ins.states, FockVector::vacuum(), window);
        bool ok = true;
        window.for_each([&](const std::vector<int>& e) { ok = ok && s.at(e).coefficient(Word()) == ex.coefficient(e); });
        summary["cross_check"] = ok;
        code = ok ? 0 : 1;
    }
    emit(out, Json{{"summary", summary}});
    err << nonzero << " nonzero coefficients";
    if (cross_check) err << (code ? "; product series cross-check FAILED" : "; product series cross-check passed");
    err << '\n';
    return code;
}

int cmd_expdelta(const Config& cfg, const std::string& state, bool check_iterative, std::ostream& out, std::ostream& err) {
    const FockVector v = parse_state(cfg.hspace, state);
    const ExponentMap closed = exp_delta(cfg.hspace, cfg.delta, v);
    for (const auto& [e, x] : closed) {
        emit(out, Json{{"exponent", e}, {"state", render(cfg.hspace, x)}});
        err << "x^" << e << ": " << render(cfg.hspace, x) << '\n';
    }
    if (!check_iterative) return 0;
    const bool ok = closed == exp_delta_iterative(cfg.hspace, cfg.delta, v);
    emit(out, Json{{"summary", {{"closed_equals_iterative", ok}}}});
    err << (ok ? "closed form equals the iterated series\n" : "closed form DIFFERS from the iterated series\n");
    return ok ? 0 : 1;
}

}  // namespace

Config parse_config(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    for (const auto& [key, value] : j.items())
        if (key != "M" && key != "gram" && key != "l" && key != "delta_coeffs")
            throw std::invalid_argument("config: unknown field " + key);
    if (!j.contains("M")) throw std::invalid_argument("config: missing field M");
    const int M = int_field(j["M"], "config field M");
    if (M < 1) throw std::invalid_argument("config field M: expected a positive integer");

    Config cfg;
    if (j.contains("gram")) {
        const auto& g = j["gram"];
        const std::size_t n = 2 * static_cast<std::size_t>(M);
        if (!g.is_array() || g.size() != n) throw std::invalid_argument("config field gram: expected 2M rows");
        std::vector<std::vector<Rational>> gram;
        for (const auto& row : g) {
            if (!row.is_array() || row.size() != n) throw std::invalid_argument("config field gram: expected 2M columns");
            gram.emplace_back();
            for (const auto& x : row) gram.back().push_back(rational_field(x, "config field gram"));
        }
        cfg.hspace = HSpace(M, gram);
    } else {
        cfg.hspace = HSpace(M);
    }
    if (j.contains("l")) cfg.central_scalar = rational_field(j["l"], "config field l");
    if (j.contains("delta_coeffs")) {
        const auto& d = j["delta_coeffs"];
        if (!d.is_array()) throw std::invalid_argument("config field delta_coeffs: expected a list of [m, n, value]");
        std::vector<std::tuple<int, int, Rational>> entries;
        for (const auto& e : d) {
            if (!e.is_array() || e.size() != 3) throw std::invalid_argument("config field delta_coeffs: expected [m, n, value]");
            entries.emplace_back(int_field(e[0], "delta_coeffs m"), int_field(e[1], "delta_coeffs n"),
                                 rational_field(e[2], "delta_coeffs value"));
        }
        cfg.delta = DeltaCoeffs::from_entries(entries);
    }
    return cfg;
}

FockVector parse_state(const HSpace& h, std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto fail = [&](const std::string& why) -> void {
        throw std::invalid_argument("state '" + std::string(text) + "': " + why);
    };
    if (s.empty()) fail("empty");
    if (s == "0") return FockVector();

    FockVector out;
    std::size_t pos = 0;
    auto digits = [&] {
        const std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return s.substr(start, pos - start);
    };
    for (bool first = true; pos < s.size(); first = false) {
        Rational coeff(1);
        if (s[pos] == '+' || s[pos] == '-') {
            if (s[pos] == '-') coeff = Rational(-1);
            ++pos;
        } else if (!first) {
            fail("expected + or - between terms");
        }
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::string num = digits();
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                const std::string den = digits();
                if (den.empty()) fail("malformed coefficient");
                num += "/" + den;
            }
            coeff = coeff * Rational::parse(num);
            if (pos < s.size() && s[pos] == '*') ++pos;
        }
        std::vector<Mode> modes;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
            const std::size_t start = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            digits();
            const std::string name = s.substr(start, pos - start);
            const auto g = h.parse_gen(name);
            if (!g) fail("unknown generator " + name);
            if (pos >= s.size() || s[pos] != '(') fail("expected ( after " + name);
            ++pos;
            bool neg = false;
            if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
            const std::string num = digits();
            if (num.empty() || s.compare(pos, 3, "/2)") != 0) fail("mode levels are written as (k/2) with k odd");
            pos += 3;
            const long k = std::stol(num) * (neg ? -1 : 1);
            if (k % 2 == 0) fail("mode levels are written as (k/2) with k odd");
            modes.push_back(Mode{*g, static_cast<int>((k - 1) / 2)});
        }
        if (s.compare(pos, 3, "|0>") != 0) fail("expected |0> at position " + std::to_string(pos));
        pos += 3;
        out += apply_modes(h, modes, FockVector::vacuum()) * coeff;
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations in the fermionic MOSVA on a non-anticommutative Fock space", "mosva"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--config", common.config_path, "JSON configuration file");
    app.add_flag("--json", common.json, "Emit JSON lines on standard output (the default)");

    CheckArgs ca;
    auto* check = app.add_subcommand("check", "Run seeded property suites");
    check->add_option("--suite", ca.suite)->check(CLI::IsMember({"axioms", "wick", "delta", "pbw", "all"}));
    check->add_option("--seed", ca.seed);
    check->add_option("--max-weight", ca.max_weight, "Largest weight of sampled states");
    check->add_option("--r", ca.r, "Largest length of the first word in the Wick suite");
    check->add_option("--s", ca.s, "Largest length of the second word in the Wick suite");
    check->add_option("--samples", ca.samples);
    check->add_option("--window", ca.window, "lo,hi for every axis, or one lo,hi pair per axis");

    std::vector<std::string> corr_items;
    auto* corr = app.add_subcommand("correlate", "Correlation function of insertions STATE@VARIABLE");
    corr->add_option("insertions", corr_items)->required();

    std::vector<std::string> exp_items;
    std::string order, exp_window = "-4,1";
    bool cross = false;
    auto* expand = app.add_subcommand("expand", "Expand a correlation function in |z_1| > |z_2| > ...");
    expand->add_option("insertions", exp_items)->required();
    expand->add_option("--order", order, "Comma-separated variables, largest first");
    expand->add_option("--window", exp_window);
    expand->add_flag("--cross-check", cross, "Compare with the product of vertex operators");

    std::string state;
    bool iterative = false;
    auto* expd = app.add_subcommand("expdelta", "Apply exp(Delta(x)) to a state");
    expd->add_option("state", state)->required();
    expd->add_flag("--check-iterative", iterative, "Compare with the iterated exponential series");

    std::vector<std::string> argv_store{"mosva"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const Config cfg = load_config(common);
        if (*check) return cmd_check(cfg, ca, out, err);
        if (*corr) return cmd_correlate(cfg, corr_items, out, err);
        if (*expand) return cmd_expand(cfg, exp_items, order, exp_window, cross, out, err);
        return cmd_expdelta(cfg, state, iterative, out, err);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace mosva::cli
