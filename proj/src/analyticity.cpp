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

#include "hfield/analyticity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hfield {

namespace {

constexpr double kRelTol = 1e-9;
// M is rounded up to a multiple of 1/kMGrain.
constexpr long kMGrain = 64;

Rational rational_pow(const Rational& base, unsigned n) {
    Rational out(1);
    for (unsigned t = 0; t < n; ++t) out *= base;
    return out;
}

// Smallest multiple of 1/kMGrain strictly greater than x.
Rational round_up_strict(double x) {
    mpz_class steps;
    steps.set_str(std::to_string(static_cast<long long>(std::floor(x * kMGrain))), 10);
    return make_rational(steps + 1, kMGrain);
}

double section_sup(const FieldSection& phi, GridEvaluator& grid) {
    std::vector<double> sq(grid.size(), 0.0);
    for (const auto& [l, a] : phi.coeffs()) {
        const auto vals = grid.values(a);
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] += std::norm(vals[i]);
    }
    double best = 0.0;
    for (double v : sq) best = std::max(best, v);
    return std::sqrt(best);
}

double scale_factor(const Rational& delta, unsigned m) {
    return Rational(rational_pow(delta, m) / factorial(m)).get_d();
}

bool within(double value, double bound) { return value <= bound + kRelTol * std::abs(bound); }

}  // namespace

std::vector<WirtingerPolynomial> coefficient_functions(const WirtingerPolynomial& f, const ConnectionSpec& conn,
                                                       BasisIndex j) {
    return {f, connection_coefficient(conn, j, Direction::D), connection_coefficient(conn, j, Direction::Dbar)};
}

double derivative_sup(const WirtingerPolynomial& h, unsigned m, GridEvaluator& grid) {
    double best = 0.0;
    for (unsigned nd = 0; nd <= m; ++nd) {
        WirtingerPolynomial v = h;
        for (unsigned t = 0; t < nd && !v.is_zero(); ++t) v = v.derivative(Direction::D);
        for (unsigned t = nd; t < m && !v.is_zero(); ++t) v = v.derivative(Direction::Dbar);
        best = std::max(best, grid.sup_abs(v));
    }
    return best;
}

double derivative_sup(const WirtingerPolynomial& h, unsigned m, const CompactRectangle& K) {
    GridEvaluator grid(K);
    return derivative_sup(h, m, grid);
}

Rational delta_from(const Rational& epsilon, const Rational& M) {
    if (sgn(epsilon) <= 0 || epsilon >= 1) throw std::domain_error("epsilon must lie in (0, 1)");
    if (M <= 1) throw std::domain_error("M must exceed 1");
    return Rational(epsilon / (2 * (1 + M * epsilon)));
}

AnalyticityEstimate estimate_eps_M(const WirtingerPolynomial& f, const ConnectionSpec& conn, BasisIndex j,
                                   const CompactRectangle& K, const EstimateOptions& opts) {
    if (opts.safety_factor < 1) throw std::invalid_argument("safety factor must be at least 1");
    auto h_set = coefficient_functions(f, conn, j);
    unsigned degree = 0;
    for (const auto& h : h_set) degree = std::max(degree, h.total_degree());
    const unsigned m_max = degree + 1;

    GridEvaluator grid(K);
    std::vector<std::vector<double>> sups;  // sups[h][m]
    for (const auto& h : h_set) {
        auto& row = sups.emplace_back();
        for (unsigned m = 0; m <= m_max; ++m) row.push_back(derivative_sup(h, m, grid));
    }

    Rational eps(1, 2);
    for (unsigned step = 0; step < opts.ladder_steps; ++step, eps /= 2) {
        double raw = 0.0;
        for (const auto& row : sups) {
            for (unsigned m = 0; m <= m_max; ++m) raw = std::max(raw, scale_factor(eps, m) * row[m]);
        }
        Rational M = round_up_strict(opts.safety_factor.get_d() * raw);
        if (M <= 1) M = make_rational(kMGrain + 1, kMGrain);

        AnalyticityEstimate cert{eps, M, delta_from(eps, M), m_max, K, h_set, false};
        if (audit_certificate(cert).ok) {
            cert.audited = true;
            return cert;
        }
    }
    throw std::runtime_error("no (epsilon, M) certificate found on the ladder");
}

AuditResult audit_certificate(const AnalyticityEstimate& cert) {
    AuditResult res;
    if (sgn(cert.epsilon) <= 0 || cert.epsilon >= 1) {
        res.detail = "epsilon outside (0, 1)";
        return res;
    }
    if (cert.M <= 1) {
        res.detail = "M must exceed 1";
        return res;
    }
    if (cert.delta != cert.epsilon / (2 * (1 + cert.M * cert.epsilon))) {
        res.detail = "delta differs from epsilon / (2 (1 + M epsilon))";
        return res;
    }

    const auto points = cert.K.points();
    const double M = cert.M.get_d();
    for (std::size_t hi = 0; hi < cert.h_set.size(); ++hi) {
        const auto& h = cert.h_set[hi];
        for (const auto& seq : all_direction_sequences(cert.m_max)) {
            if (!wirtinger_derivative(h, seq).is_zero()) {
                res.detail = "derivative of order m_max does not vanish for h[" + std::to_string(hi) + "]";
                return res;
            }
        }
        for (unsigned m = 0; m < cert.m_max; ++m) {
            const double scale = Rational(rational_pow(cert.epsilon, m) / factorial(m)).get_d();
            for (const auto& seq : all_direction_sequences(m)) {
                const WirtingerPolynomial d = wirtinger_derivative(h, seq);
                for (const auto& s : points) {
                    const double ratio = scale * std::abs(d.evaluate(s)) / M;
                    res.worst_ratio = std::max(res.worst_ratio, ratio);
                }
            }
        }
    }
    res.ok = res.worst_ratio < 1.0;
    if (!res.ok) {
        std::ostringstream os;
        os << "bound violated: worst (eps^m/m!)|eta h| / M = " << res.worst_ratio;
        res.detail = os.str();
    }
    return res;
}

double decay_bound(const AnalyticityEstimate& cert, unsigned m) {
    return Rational(Rational(static_cast<long>(m) + 1) * cert.M * rational_pow(Rational(1, 2), m)).get_d();
}

std::vector<DecayEntry> decay_report(const ConnectionSpec& conn, BasisIndex j, const WirtingerPolynomial& f,
                                     const AnalyticityEstimate& cert, unsigned m_max) {
    GridEvaluator grid(cert.K);
    std::vector<FieldSection> level{FieldSection::scaled_basis(f, j)};
    std::vector<std::vector<Direction>> seqs{{}};
    std::vector<DecayEntry> out;
    for (unsigned m = 0; m <= m_max; ++m) {
        DecayEntry row;
        row.m = m;
        for (std::size_t t = 0; t < level.size(); ++t) {
            const double v = section_sup(level[t], grid);
            if (t == 0 || v > row.sup_norm) {
                row.sup_norm = v;
                row.worst_dirs = seqs[t];
            }
        }
        row.delta_scaled = scale_factor(cert.delta, m) * row.sup_norm;
        row.bound = decay_bound(cert, m);
        row.pass = within(row.delta_scaled, row.bound);
        out.push_back(std::move(row));
        if (m == m_max) break;

        std::vector<FieldSection> next;
        std::vector<std::vector<Direction>> next_seqs;
        next.reserve(level.size() * 2);
        next_seqs.reserve(level.size() * 2);
        for (std::size_t t = 0; t < level.size(); ++t) {
            for (Direction d : {Direction::D, Direction::Dbar}) {
                next.push_back(covariant_derivative(level[t], d, conn));
                auto seq = seqs[t];
                seq.push_back(d);
                next_seqs.push_back(std::move(seq));
            }
        }
        level = std::move(next);
        seqs = std::move(next_seqs);
    }
    return out;
}

std::vector<double> decay_profile(const ConnectionSpec& conn, BasisIndex j, const WirtingerPolynomial& f,
                                  const AnalyticityEstimate& cert, unsigned m_max) {
    std::vector<double> out;
    for (const auto& row : decay_report(conn, j, f, cert, m_max)) out.push_back(row.delta_scaled);
    return out;
}

DecayEntry greedy_decay_entry(const ConnectionSpec& conn, BasisIndex j, const WirtingerPolynomial& f,
                              const AnalyticityEstimate& cert, unsigned m) {
    GridEvaluator grid(cert.K);
    FieldSection current = FieldSection::scaled_basis(f, j);
    DecayEntry row;
    row.m = m;
    row.sup_norm = section_sup(current, grid);
    for (unsigned step = 0; step < m; ++step) {
        FieldSection via_d = covariant_derivative(current, Direction::D, conn);
        FieldSection via_dbar = covariant_derivative(current, Direction::Dbar, conn);
        const double sup_d = section_sup(via_d, grid);
        const double sup_dbar = section_sup(via_dbar, grid);
        if (sup_dbar > sup_d) {
            current = std::move(via_dbar);
            row.sup_norm = sup_dbar;
            row.worst_dirs.push_back(Direction::Dbar);
        } else {
            current = std::move(via_d);
            row.sup_norm = sup_d;
            row.worst_dirs.push_back(Direction::D);
        }
    }
    row.delta_scaled = scale_factor(cert.delta, m) * row.sup_norm;
    row.bound = decay_bound(cert, m);
    row.pass = within(row.delta_scaled, row.bound);
    return row;
}

bool verify_bound_chain(const ConnectionSpec& conn, BasisIndex j, const WirtingerPolynomial& f,
                        const AnalyticityEstimate& cert, std::span<const Direction> dirs) {
    const auto m = static_cast<unsigned>(dirs.size());
    GridEvaluator grid(cert.K);
    const double sup = section_sup(iterated_covariant(FieldSection::scaled_basis(f, j), dirs, conn), grid);

    const Rational growth = (1 + cert.M * cert.epsilon) / cert.epsilon;
    const double chain_bound = Rational(factorial(m + 1) * cert.M * rational_pow(growth, m)).get_d();
    const double scaled = scale_factor(cert.delta, m) * sup;
    return within(sup, chain_bound) && within(scaled, decay_bound(cert, m));
}

Rational term_type_bound(const KSplitting& spl, const AnalyticityEstimate& cert) {
    const auto k = static_cast<unsigned>(spl.k());
    Rational bound = rational_pow(cert.M, k) / rational_pow(cert.epsilon, spl.m + 1 - k);
    for (unsigned l : term_type(spl)) bound *= factorial(l - 1);
    return bound;
}

bool verify_term_type_bound(const KSplitting& spl, std::span<const Direction> dirs, const ConnectionSpec& conn,
                            BasisIndex j, const WirtingerPolynomial& f, const AnalyticityEstimate& cert) {
    GridEvaluator grid(cert.K);
    const double sup = grid.sup_abs(splitting_term(spl, dirs, conn, j, f));
    return within(sup, term_type_bound(spl, cert).get_d());
}

}  // namespace hfield
