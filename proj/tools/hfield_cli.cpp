/*
 * Copyright 2026 The hfield Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// hfield: batch verification runs and report generation.
//
//   hfield <verify-identity|splittings|curvature|analyticity|all>
//          [--config PATH] [--out DIR] [--m-max N] [--grid N] [--json] [--csv]
//
// Exit status: 0 every check passed, 1 a verification failed, 2 usage or config error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hfield/commands.hpp"

namespace fs = std::filesystem;
using namespace hfield;

namespace {

struct Options {
    std::string config_path;
    std::string out_dir;
    std::optional<unsigned> m_max;
    std::optional<unsigned> grid;
    bool json = false;
    bool csv = false;
};

RunConfig load_config(const Options& opt, const std::string& suite) {
    RunConfig cfg;
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw ConfigError("cannot open config file " + opt.config_path);
        Json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        cfg = config_from_json(j);
    }
    if (opt.m_max) {
        const unsigned n = *opt.m_max;
        if (suite == "verify-identity" || suite == "all") cfg.m_identity = n;
        if (suite == "splittings" || suite == "all") cfg.m_splittings = n;
        if (suite == "curvature" || suite == "all") cfg.j_max = n;
        if (suite == "analyticity" || suite == "all") cfg.m_decay = n;
    }
    if (opt.grid) cfg.K = cfg.K.with_grid(*opt.grid);
    return cfg;
}

bool is_csv(const std::string& name) { return name.size() >= 4 && name.compare(name.size() - 4, 4, ".csv") == 0; }

void emit(const CommandResult& res, const Options& opt) {
    // Neither flag means both formats.
    const bool want_json = opt.json || !opt.csv;
    const bool want_csv = opt.csv || !opt.json;
    if (opt.out_dir.empty()) {
        if (want_json) std::cout << res.report.dump(2) << "\n";
        if (want_csv && !want_json) {
            for (const auto& [name, body] : res.files) {
                if (!is_csv(name)) continue;
                std::cout << "# " << name << "\n" << body;
            }
        }
        return;
    }
    fs::create_directories(opt.out_dir);
    auto write = [&](const std::string& name, const std::string& body) {
        std::ofstream out(fs::path(opt.out_dir) / name);
        out << body;
    };
    if (want_json) write("report.json", res.report.dump(2) + "\n");
    for (const auto& [name, body] : res.files) {
        if (is_csv(name) ? want_csv : want_json) write(name, body);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of the diagonal Hilbert field construction"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON run configuration");
        sub->add_option("--out", opt.out_dir, "Directory for report.json, CSV tables and certificates");
        sub->add_option("--m-max", opt.m_max, "Sweep cap for this suite (derivative order, table rows or j)");
        sub->add_option("--grid", opt.grid, "Lattice points per axis on the compact rectangle");
        sub->add_flag("--json", opt.json, "Emit JSON outputs only");
        sub->add_flag("--csv", opt.csv, "Emit CSV outputs only");
    };

    const std::pair<const char*, const char*> suites[] = {
        {"verify-identity", "Check the closed-form expansion against iterated covariant derivatives"},
        {"splittings", "Count k-splittings and verify the type-1 / type-2 correspondences"},
        {"curvature", "Curvature spectrum and unboundedness witness for a potential g"},
        {"analyticity", "Audited (epsilon, M) certificates and the decay profile"},
        {"all", "Run every suite"},
    };
    for (const auto& [name, help] : suites) add_common(app.add_subcommand(name, help));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitPass : kExitConfigError;
    }

    const std::string suite = app.get_subcommands().front()->get_name();
    CommandResult res;
    try {
        const RunConfig cfg = load_config(opt, suite);
        if (suite == "verify-identity") res = cmd_verify_identity(cfg);
        else if (suite == "splittings") res = cmd_splittings(cfg);
        else if (suite == "curvature") res = cmd_curvature(cfg);
        else if (suite == "analyticity") res = cmd_analyticity(cfg);
        else res = cmd_all(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "hfield " << suite << ": " << e.what() << "\n";
        return kExitConfigError;
    }

    emit(res, opt);
    const char* verdict = res.exit_code == kExitPass                  ? "PASS"
                          : res.exit_code == kExitVerificationFailure ? "FAIL"
                                                                      : "CONFIG ERROR";
    std::cerr << "hfield " << suite << ": " << verdict;
    if (res.report.contains("error")) std::cerr << " (" << res.report["error"].get<std::string>() << ")";
    std::cerr << "\n";
    return res.exit_code;
}
