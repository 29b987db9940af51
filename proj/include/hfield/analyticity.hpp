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

#include <span>
#include <string>
#include <vector>

#include "hfield/field.hpp"
#include "hfield/grid.hpp"
#include "hfield/splitting.hpp"

namespace hfield {

/// Constants (epsilon, M, delta) witnessing the uniform derivative bound
///   sup (epsilon^m / m!) |eta_1 ... eta_m h(s)| < M
/// for every h in h_set, every direction sequence, every lattice point of K.
///
/// m_max is the order past which all derivatives of every h vanish
/// identically, so checking m <= m_max covers every m.
struct AnalyticityEstimate {
    Rational epsilon;
    Rational M;
    Rational delta;
    unsigned m_max = 0;
    CompactRectangle K;
    std::vector<WirtingerPolynomial> h_set;
    bool audited = false;
};

struct EstimateOptions {
    /// Multiplier applied to the lattice maximum before rounding M up.
    Rational safety_factor{2};
    /// Number of epsilon candidates 1/2, 1/4, ... tried before giving up.
    unsigned ladder_steps = 24;
};

/// {f, (j+1) k, -(j+1) conj(k)}
std::vector<WirtingerPolynomial> coefficient_functions(const WirtingerPolynomial& f, const ConnectionSpec& conn,
                                                       BasisIndex j);

/// Max of |eta_1 ... eta_m h| over all direction sequences of length m and all
/// lattice points. Coordinate derivatives commute, so only the m+1 classes
/// D^a Dbar^(m-a) are evaluated.
double derivative_sup(const WirtingerPolynomial& h, unsigned m, const CompactRectangle& K);
double derivative_sup(const WirtingerPolynomial& h, unsigned m, GridEvaluator& grid);

/// epsilon / (2 (1 + M epsilon)). Throws std::domain_error unless 0 < epsilon < 1 and M > 1.
Rational delta_from(const Rational& epsilon, const Rational& M);

/// First (epsilon, M) on the ladder that passes audit_certificate.
/// Throws std::invalid_argument for a safety factor below 1, and
/// std::runtime_error if the ladder is exhausted, which cannot happen
/// for polynomial inputs with a safety factor >= 1.
AnalyticityEstimate estimate_eps_M(const WirtingerPolynomial& f, const ConnectionSpec& conn, BasisIndex j,
                                   const CompactRectangle& K, const EstimateOptions& opts = {});

struct AuditResult {
    bool ok = false;
    /// Largest (epsilon^m / m!) |eta h| / M seen; must be < 1.
    double worst_ratio = 0.0;
    std::string detail;
};

/// Re-verifies a certificate from scratch: the parameter ranges, the exact
/// delta, that every derivative of order m_max vanishes, and the strict
/// inequality over every literal direction sequence and lattice point.
/// Evaluates through WirtingerPolynomial::evaluate, not GridEvaluator.
AuditResult audit_certificate(const AnalyticityEstimate& cert);

/// One row of the decay report.
struct DecayEntry {
    unsigned m = 0;
    /// max over sequences and lattice points of h(nabla...(f phi_j), same)^(1/2)
    double sup_norm = 0.0;
    /// (delta^m / m!) * sup_norm
    double delta_scaled = 0.0;
    /// (m+1) M (1/2)^m
    double bound = 0.0;
    bool pass = false;
    /// A sequence attaining sup_norm.
    std::vector<Direction> worst_dirs;
};

/// (m+1) M (1/2)^m as a double.
double decay_bound(const AnalyticityEstimate& cert, unsigned m);

/// Rows m = 0..m_max, each maximized over all 2^m direction sequences.
std::vector<DecayEntry> decay_report(const ConnectionSpec& conn, BasisIndex j, const WirtingerPolynomial& f,
                                     const AnalyticityEstimate& cert, unsigned m_max);

/// The delta_scaled column of decay_report.
std::vector<double> decay_profile(const ConnectionSpec& conn, BasisIndex j, const WirtingerPolynomial& f,
                                  const AnalyticityEstimate& cert, unsigned m_max);

/// Row m for a single sequence grown greedily: each step appends the direction
/// whose result has the larger lattice sup norm.
DecayEntry greedy_decay_entry(const ConnectionSpec& conn, BasisIndex j, const WirtingerPolynomial& f,
                              const AnalyticityEstimate& cert, unsigned m);

/// Checks, on cert.K, both
///   sup |nabla_dirs (f phi_j)| <= (m+1)! M ((1 + M eps) / eps)^m
///   (delta^m / m!) sup |nabla_dirs (f phi_j)| <= (m+1) M (1/2)^m
/// with relative tolerance 1e-9 on each bound.
bool verify_bound_chain(const ConnectionSpec& conn, BasisIndex j, const WirtingerPolynomial& f,
                        const AnalyticityEstimate& cert, std::span<const Direction> dirs);

/// M^k / eps^(m+1-k) * (l_1 - 1)! ... (l_k - 1)! for the term type of spl.
Rational term_type_bound(const KSplitting& spl, const AnalyticityEstimate& cert);

/// sup |splitting_term(spl, ...)| on cert.K <= term_type_bound(spl, cert), relative tolerance 1e-9.
bool verify_term_type_bound(const KSplitting& spl, std::span<const Direction> dirs, const ConnectionSpec& conn,
                            BasisIndex j, const WirtingerPolynomial& f, const AnalyticityEstimate& cert);

}  // namespace hfield
