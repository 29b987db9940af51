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

#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfield/serialize.hpp"

namespace hfield {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitPass = 0,
    kExitVerificationFailure = 1,
    kExitConfigError = 2,
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Everything a verification run needs. Defaults reproduce the standard sweep:
/// g = s sbar (so k = sbar), j in {0, 1, 4}, f in {1, s, s sbar}, K = [-1, 1]^2.
struct RunConfig {
    std::optional<WirtingerPolynomial> k;
    std::optional<WirtingerPolynomial> g;
    std::vector<BasisIndex> indices{0, 1, 4};
    std::vector<WirtingerPolynomial> functions;
    CompactRectangle K = CompactRectangle::centered_square(Rational(1), 64);
    Rational safety_factor{2};

    unsigned m_identity = 6;    ///< verify-identity: m <= cap, all sequences
    unsigned m_splittings = 8;  ///< splittings: table rows m <= cap
    unsigned m_decay = 10;      ///< analyticity: exhaustive rows m <= cap
    unsigned m_greedy = 12;     ///< analyticity: greedy worst-sequence row
    unsigned j_max = 9;         ///< curvature: eigenvalues for j <= cap
    std::vector<std::complex<double>> points{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}};

    RunConfig();

    /// The connection implied by g (preferred) or k. Throws ConfigError if neither is set.
    ConnectionSpec connection() const;
};

/// Reads a JSON config on top of the defaults. Throws ConfigError.
RunConfig config_from_json(const Json& j);

/// Throws ConfigError when the config cannot drive any run.
void validate_config(const RunConfig& cfg);

/// Outcome of a subcommand: exit status, a JSON report, and named output files
/// (CSV tables and JSON certificates) keyed by file name.
struct CommandResult {
    int exit_code = kExitPass;
    Json report = Json::object();
    std::map<std::string, std::string> files;
};

/// verify_identity over every (j, f, m <= m_identity, direction sequence) cell.
CommandResult cmd_verify_identity(const RunConfig& cfg);

/// N(m, k) table with type-1 / type-2 breakdown and the recursion check, plus
/// both correspondences for every m with m + 1 <= m_splittings.
CommandResult cmd_splittings(const RunConfig& cfg);

/// Curvature spectrum lambda_j for j <= j_max with the growth flag at each point.
/// Requires a real potential g.
CommandResult cmd_curvature(const RunConfig& cfg);

/// Certificate, exhaustive decay report, greedy row and bound-chain checks for
/// every (j, f).
CommandResult cmd_analyticity(const RunConfig& cfg);

/// All four suites; reports are nested under their subcommand names.
CommandResult cmd_all(const RunConfig& cfg);

}  // namespace hfield
