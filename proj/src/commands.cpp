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

#include "hfield/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace hfield {

namespace {

const std::set<std::string> kConfigKeys{"k",      "g",          "indices", "functions", "K",     "safety_factor",
                                        "m_identity", "m_splittings", "m_decay", "m_greedy", "j_max", "points"};

std::string dirs_text(std::span<const Direction> dirs) {
    std::string out;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        if (i) out += ",";
        out += to_string(dirs[i]);
    }
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Runs a suite body, mapping configuration problems to exit 2 and broken
// internal invariants to exit 1.
template <typename Fn>
CommandResult guarded(const char* suite, Fn&& body) {
    CommandResult res;
    res.report["suite"] = suite;
    try {
        body(res);
    } catch (const ConfigError& e) {
        res.exit_code = kExitConfigError;
        res.report["error"] = e.what();
    } catch (const InvalidCompactSet& e) {
        res.exit_code = kExitConfigError;
        res.report["error"] = e.what();
    } catch (const InternalInconsistency& e) {
        res.exit_code = kExitVerificationFailure;
        res.report["error"] = e.what();
    } catch (const CorrespondenceFailure& e) {
        res.exit_code = kExitVerificationFailure;
        res.report["error"] = e.what();
    }
    return res;
}

template <typename T>
T read_field(const Json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
    }
}

unsigned read_natural(const Json& j, const char* key) { return json_natural(j.at(key), key); }

}  // namespace

RunConfig::RunConfig()
    : g(WirtingerPolynomial::s() * WirtingerPolynomial::sbar()),
      functions{WirtingerPolynomial(1), WirtingerPolynomial::s(), WirtingerPolynomial::s() * WirtingerPolynomial::sbar()} {}

ConnectionSpec RunConfig::connection() const {
    try {
        if (g && k) return ConnectionSpec(*k, *g);
        if (g) {
            if (!g->is_real_valued()) throw ConfigError("potential g must be real-valued");
            return ConnectionSpec::from_potential(*g);
        }
        if (k) return ConnectionSpec(*k);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("config must supply a connection coefficient k or a potential g");
}

RunConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (!kConfigKeys.count(key)) throw ConfigError("unknown config field '" + key + "'");
    }
    RunConfig cfg;
    try {
        // Supplying either k or g replaces the default connection entirely.
        if (j.contains("k") || j.contains("g")) {
            cfg.k.reset();
            cfg.g.reset();
            if (j.contains("k")) cfg.k = polynomial_from_json(j.at("k"));
            if (j.contains("g")) cfg.g = polynomial_from_json(j.at("g"));
        }
        if (j.contains("indices")) {
            const Json& v = j.at("indices");
            if (!v.is_array()) throw ConfigError("indices must be an array");
            cfg.indices.clear();
            for (const auto& x : v) cfg.indices.push_back(json_natural(x, "basis index"));
        }
        if (j.contains("functions")) {
            cfg.functions.clear();
            for (const auto& f : j.at("functions")) cfg.functions.push_back(polynomial_from_json(f));
        }
        if (j.contains("K")) cfg.K = rectangle_from_json(j.at("K"));
        if (j.contains("safety_factor")) cfg.safety_factor = parse_rational(read_field<std::string>(j, "safety_factor"));
        if (j.contains("m_identity")) cfg.m_identity = read_natural(j, "m_identity");
        if (j.contains("m_splittings")) cfg.m_splittings = read_natural(j, "m_splittings");
        if (j.contains("m_decay")) cfg.m_decay = read_natural(j, "m_decay");
        if (j.contains("m_greedy")) cfg.m_greedy = read_natural(j, "m_greedy");
        if (j.contains("j_max")) cfg.j_max = read_natural(j, "j_max");
        if (j.contains("points")) {
            cfg.points.clear();
            for (const auto& p : read_field<std::vector<std::vector<double>>>(j, "points")) {
                if (p.size() != 2) throw ConfigError("each point must be [re, im]");
                cfg.points.emplace_back(p[0], p[1]);
            }
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    validate_config(cfg);
    return cfg;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.indices.empty()) throw ConfigError("basis index list is empty");
    if (cfg.functions.empty()) throw ConfigError("function list is empty");
    if (cfg.safety_factor < 1) throw ConfigError("safety_factor must be at least 1");
    (void)cfg.connection();
}

CommandResult cmd_verify_identity(const RunConfig& cfg) {
    return guarded("verify-identity", [&](CommandResult& res) {
        validate_config(cfg);
        const ConnectionSpec conn = cfg.connection();
        const SplittingTable table(cfg.m_identity);

        Json cells = Json::array();
        std::ostringstream csv;
        csv << "j,f,m,dirs,pass\n";
        std::size_t failed = 0;
        for (BasisIndex j : cfg.indices) {
            for (const auto& f : cfg.functions) {
                for (unsigned m = 0; m <= cfg.m_identity; ++m) {
                    for (const auto& dirs : all_direction_sequences(m)) {
                        const bool ok = verify_identity(table, dirs, conn, j, f);
                        failed += ok ? 0 : 1;
                        cells.push_back({{"j", j}, {"f", f.to_string()}, {"m", m}, {"dirs", dirs_text(dirs)}, {"pass", ok}});
                        csv << j << ",\"" << f.to_string() << "\"," << m << ",\"" << dirs_text(dirs) << "\","
                            << (ok ? "pass" : "FAIL") << "\n";
                    }
                }
            }
        }
        res.report["connection"] = to_json(conn);
        res.report["cells"] = std::move(cells);
        res.report["failed"] = failed;
        res.report["all_pass"] = failed == 0;
        res.files["identity.csv"] = csv.str();
        res.exit_code = failed == 0 ? kExitPass : kExitVerificationFailure;
    });
}

CommandResult cmd_splittings(const RunConfig& cfg) {
    return guarded("splittings", [&](CommandResult& res) {
        const unsigned cap = cfg.m_splittings;
        const SplittingTable table(cap);
        bool all_ok = true;

        auto n = [&](unsigned m, unsigned k) -> std::uint64_t { return table.get(m, k).size(); };

        std::ostringstream csv;
        csv << "m,k,total,type1,type2,recursion\n";
        Json rows = Json::array();
        for (unsigned m = 0; m <= cap; ++m) {
            for (unsigned k = 1; k <= m + 1; ++k) {
                const auto cell = table.get(m, k);
                Json row{{"m", m}, {"k", k}, {"total", cell.size()}};
                bool ok;
                std::string t1 = "", t2 = "";
                if (m == 0) {
                    ok = cell.size() == 1;
                } else {
                    std::uint64_t c1 = 0, c2 = 0;
                    for (const auto& spl : cell) (classify(spl) == SplittingType::Type1 ? c1 : c2) += 1;
                    const std::uint64_t expect1 = k >= 2 ? n(m - 1, k - 1) : 0;
                    const std::uint64_t expect2 = k * n(m - 1, k);
                    ok = c1 == expect1 && c2 == expect2 && cell.size() == expect1 + expect2;
                    t1 = std::to_string(c1);
                    t2 = std::to_string(c2);
                    row["type1"] = c1;
                    row["type2"] = c2;
                }
                row["recursion"] = ok;
                all_ok = all_ok && ok;
                rows.push_back(std::move(row));
                csv << m << "," << k << "," << cell.size() << "," << t1 << "," << t2 << "," << (ok ? "pass" : "FAIL")
                    << "\n";
            }
        }

        Json agree = Json::array();
        for (unsigned m = 0; m <= std::min(cap, 7U); ++m) {
            for (unsigned k = 1; k <= m + 1; ++k) {
                const auto cell = table.get(m, k);
                const auto brute = enumerate_splittings_brute_force(m, k);
                const bool ok = std::equal(cell.begin(), cell.end(), brute.begin(), brute.end());
                all_ok = all_ok && ok;
                agree.push_back({{"m", m}, {"k", k}, {"pass", ok}});
            }
        }

        Json corr = Json::array();
        for (unsigned m = 0; m + 1 <= cap; ++m) {
            for (unsigned k = 2; k <= m + 2; ++k) {
                Json entry{{"kind", "type1"}, {"m", m}, {"k", k}};
                try {
                    entry["pairs"] = type1_bijection(m, k).pairs.size();
                    entry["pass"] = true;
                } catch (const CorrespondenceFailure& e) {
                    entry["pass"] = false;
                    entry["error"] = e.what();
                    all_ok = false;
                }
                corr.push_back(std::move(entry));
            }
            for (unsigned k = 1; k <= m + 1; ++k) {
                Json entry{{"kind", "type2"}, {"m", m}, {"k", k}};
                try {
                    entry["sources"] = type2_correspondence(m, k).groups.size();
                    entry["pass"] = true;
                } catch (const CorrespondenceFailure& e) {
                    entry["pass"] = false;
                    entry["error"] = e.what();
                    all_ok = false;
                }
                corr.push_back(std::move(entry));
            }
        }

        res.report["rows"] = std::move(rows);
        res.report["enumerators_agree"] = std::move(agree);
        res.report["correspondences"] = std::move(corr);
        res.report["all_pass"] = all_ok;
        res.files["splittings.csv"] = csv.str();
        res.exit_code = all_ok ? kExitPass : kExitVerificationFailure;
    });
}

CommandResult cmd_curvature(const RunConfig& cfg) {
    return guarded("curvature", [&](CommandResult& res) {
        if (!cfg.g) throw ConfigError("curvature needs a potential g");
        if (!cfg.g->is_real_valued()) throw ConfigError("potential g must be real-valued");
        const ConnectionSpec conn = cfg.connection();
        const WirtingerPolynomial lap = laplacian(*cfg.g);

        std::vector<WirtingerPolynomial> lambdas;
        Json eig = Json::array();
        for (BasisIndex j = 0; j <= cfg.j_max; ++j) {
            lambdas.push_back(curvature_eigenvalue(conn, j));
            eig.push_back({{"j", j}, {"lambda", lambdas.back().to_string()}, {"lambda_poly", to_json(lambdas.back())}});
        }

        bool all_ok = true;
        std::ostringstream csv;
        csv << "j,lambda,s_re,s_im,abs_lambda\n";
        Json pts = Json::array();
        for (const auto& s0 : cfg.points) {
            Json abs_vals = Json::array();
            bool increasing = true;
            double prev = -1.0;
            for (BasisIndex j = 0; j <= cfg.j_max; ++j) {
                const double v = std::abs(lambdas[j].evaluate(s0));
                abs_vals.push_back(v);
                if (j > 0 && !(v > prev)) increasing = false;
                prev = v;
                csv << j << ",\"" << lambdas[j].to_string() << "\"," << fmt_double(s0.real()) << ","
                    << fmt_double(s0.imag()) << "," << fmt_double(v) << "\n";
            }
            const double lap_abs = std::abs(lap.evaluate(s0));
            const bool expected = lap_abs > 1e-12;
            // With a single eigenvalue there is no sequence to grow.
            const bool growth = increasing && cfg.j_max > 0;
            const bool consistent = cfg.j_max == 0 || growth == expected;
            all_ok = all_ok && consistent;
            pts.push_back({{"s", {s0.real(), s0.imag()}},
                           {"abs_laplacian", lap_abs},
                           {"abs_lambda", std::move(abs_vals)},
                           {"growth", growth},
                           {"expected_growth", expected},
                           {"pass", consistent}});
        }
        res.report["connection"] = to_json(conn);
        res.report["laplacian"] = lap.to_string();
        res.report["eigenvalues"] = std::move(eig);
        res.report["points"] = std::move(pts);
        res.report["all_pass"] = all_ok;
        res.files["curvature.csv"] = csv.str();
        res.exit_code = all_ok ? kExitPass : kExitVerificationFailure;
    });
}

CommandResult cmd_analyticity(const RunConfig& cfg) {
    return guarded("analyticity", [&](CommandResult& res) {
        validate_config(cfg);
        const ConnectionSpec conn = cfg.connection();
        EstimateOptions opts;
        opts.safety_factor = cfg.safety_factor;

        bool all_ok = true;
        Json cases = Json::array();
        for (BasisIndex j : cfg.indices) {
            for (std::size_t fi = 0; fi < cfg.functions.size(); ++fi) {
                const auto& f = cfg.functions[fi];
                const AnalyticityEstimate cert = estimate_eps_M(f, conn, j, cfg.K, opts);
                const Json cert_json = to_json(cert);
                const AuditResult audit = audit_certificate(certificate_from_json(cert_json));

                auto rows = decay_report(conn, j, f, cert, cfg.m_decay);
                bool chain_ok = true;
                for (const auto& row : rows) chain_ok = verify_bound_chain(conn, j, f, cert, row.worst_dirs) && chain_ok;
                std::optional<DecayEntry> greedy;
                if (cfg.m_greedy > cfg.m_decay) {
                    greedy = greedy_decay_entry(conn, j, f, cert, cfg.m_greedy);
                    chain_ok = verify_bound_chain(conn, j, f, cert, greedy->worst_dirs) && chain_ok;
                    rows.push_back(*greedy);
                }
                const bool decay_ok = std::all_of(rows.begin(), rows.end(), [](const DecayEntry& r) { return r.pass; });
                const bool ok = audit.ok && decay_ok && chain_ok;
                all_ok = all_ok && ok;

                std::ostringstream csv;
                csv << "m,sup_norm,delta_scaled,decay_bound,pass\n";
                Json jrows = Json::array();
                for (const auto& r : rows) {
                    csv << r.m << "," << fmt_double(r.sup_norm) << "," << fmt_double(r.delta_scaled) << ","
                        << fmt_double(r.bound) << "," << (r.pass ? "pass" : "FAIL") << "\n";
                    jrows.push_back({{"m", r.m},
                                     {"sup_norm", r.sup_norm},
                                     {"delta_scaled", r.delta_scaled},
                                     {"decay_bound", r.bound},
                                     {"worst_dirs", dirs_text(r.worst_dirs)},
                                     {"pass", r.pass}});
                }
                const std::string stem = "j" + std::to_string(j) + "_f" + std::to_string(fi);
                res.files["decay_" + stem + ".csv"] = csv.str();
                res.files["certificate_" + stem + ".json"] = cert_json.dump(2) + "\n";

                Json c{{"j", j},
                       {"f", f.to_string()},
                       {"certificate", cert_json},
                       {"audit", {{"ok", audit.ok}, {"worst_ratio", audit.worst_ratio}, {"detail", audit.detail}}},
                       {"decay", std::move(jrows)},
                       {"bound_chain", chain_ok},
                       {"pass", ok}};
                if (greedy) c["summable"] = greedy->delta_scaled < 0.1 * cert.M.get_d();
                cases.push_back(std::move(c));
            }
        }
        res.report["connection"] = to_json(conn);
        res.report["cases"] = std::move(cases);
        res.report["all_pass"] = all_ok;
        res.exit_code = all_ok ? kExitPass : kExitVerificationFailure;
    });
}

CommandResult cmd_all(const RunConfig& cfg) {
    CommandResult out;
    out.report["suite"] = "all";
    bool any_config_error = false, any_failure = false;
    const std::pair<const char*, CommandResult (*)(const RunConfig&)> suites[] = {
        {"verify-identity", cmd_verify_identity},
        {"splittings", cmd_splittings},
        {"curvature", cmd_curvature},
        {"analyticity", cmd_analyticity},
    };
    for (const auto& [name, fn] : suites) {
        CommandResult r = fn(cfg);
        any_config_error = any_config_error || r.exit_code == kExitConfigError;
        any_failure = any_failure || r.exit_code == kExitVerificationFailure;
        out.report[name] = std::move(r.report);
        out.files.merge(r.files);
    }
    out.exit_code = any_config_error ? kExitConfigError : any_failure ? kExitVerificationFailure : kExitPass;
    return out;
}

}  // namespace hfield
