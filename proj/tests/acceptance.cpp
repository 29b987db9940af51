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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "hfield/analyticity.hpp"
#include "hfield/testing_hooks.hpp"

using namespace hfield;

namespace {

constexpr double kBoundRelTol = 1e-9;
constexpr double kSummableFraction = 0.1;
constexpr double kIdentitySeconds = 60;
constexpr double kCombinatoricsSeconds = 30;
constexpr double kDecaySeconds = 120;

const WirtingerPolynomial s = WirtingerPolynomial::s();
const WirtingerPolynomial sb = WirtingerPolynomial::sbar();
const WirtingerPolynomial one(1);

struct Outcome {
    bool pass = true;
    std::string detail;
};

const std::vector<BasisIndex> kIndices{0, 1, 4};
const std::vector<WirtingerPolynomial> kFunctions{one, s, s * sb};
const std::vector<ConnectionSpec> kConnections{ConnectionSpec(sb), ConnectionSpec(s * sb * sb)};

Outcome identity_sweep(unsigned max_m) {
    const SplittingTable table(max_m);
    std::size_t cases = 0, failed = 0;
    for (const auto& conn : kConnections) {
        for (BasisIndex j : kIndices) {
            for (const auto& f : kFunctions) {
                for (unsigned m = 0; m <= max_m; ++m) {
                    for (const auto& dirs : all_direction_sequences(m)) {
                        ++cases;
                        if (!verify_identity(table, dirs, conn, j, f)) ++failed;
                    }
                }
            }
        }
    }
    return {failed == 0, std::to_string(cases) + " cases, " + std::to_string(failed) + " mismatches"};
}

Outcome recursion_sweep() {
    std::size_t cases = 0, failed = 0;
    for (const auto& conn : kConnections) {
        for (BasisIndex j : kIndices) {
            for (const auto& f : kFunctions) {
                for (unsigned m = 1; m <= 5; ++m) {
                    for (const auto& dirs : all_direction_sequences(m)) {
                        ++cases;
                        if (!recursion_check_S1_S2(dirs, conn, j, f)) ++failed;
                    }
                }
            }
        }
    }
    return {failed == 0, std::to_string(cases) + " cases, " + std::to_string(failed) + " failures"};
}

Outcome combinatorics() {
    Outcome out;
    auto require = [&](bool ok, const std::string& what) {
        if (!ok && out.pass) out.detail = what;
        out.pass = out.pass && ok;
    };
    for (unsigned m = 0; m <= 8; ++m) {
        for (unsigned k = 1; k <= m + 2; ++k) {
            const std::uint64_t prev = k >= 2 ? count_splittings(m, k - 1) : 0;
            require(count_splittings(m + 1, k) == prev + k * count_splittings(m, k),
                    "counting recursion at m=" + std::to_string(m) + ", k=" + std::to_string(k));
        }
    }
    try {
        for (unsigned m = 0; m <= 6; ++m) {
            for (unsigned k = 2; k <= m + 2; ++k) (void)type1_bijection(m, k);
            for (unsigned k = 1; k <= m + 1; ++k) (void)type2_correspondence(m, k);
        }
    } catch (const CorrespondenceFailure& e) {
        require(false, e.what());
    }
    require(count_splittings(0, 1) == 1, "N(0,1)");
    std::uint64_t t2 = 0, t3 = 0;
    for (unsigned k = 1; k <= 3; ++k) t2 += count_splittings(2, k);
    for (unsigned k = 1; k <= 4; ++k) t3 += count_splittings(3, k);
    require(t2 == 5 && t3 == 15, "row totals " + std::to_string(t2) + ", " + std::to_string(t3));
    for (unsigned m = 0; m <= 6; ++m) {
        for (unsigned k = 1; k <= m + 1; ++k) {
            require(enumerate_splittings(m, k) == enumerate_splittings_brute_force(m, k),
                    "enumerators disagree at m=" + std::to_string(m));
        }
    }
    if (out.pass) out.detail = "recursion m<=8, correspondences m<=6, totals 5 and 15";
    return out;
}

Outcome axioms() {
    testgen::Gen gen(20260601);
    std::size_t failed = 0;
    for (int t = 0; t < 200; ++t) {
        const auto conn = gen.connection(4);
        const auto f = gen.polynomial(4);
        const auto phi = gen.section(6, 4);
        const auto psi = gen.section(6, 4);
        const auto d = gen.direction();
        if (!check_leibniz(conn, f, phi, d) || !check_metric_compat(conn, phi, psi, d)) ++failed;
    }
    return {failed == 0, "200 cases, " + std::to_string(failed) + " failures"};
}

Outcome curvature() {
    Outcome out{true, "j<=9 exact, harmonic flat, 50 tensoriality cases"};
    const auto conn = ConnectionSpec::from_potential(s * sb);
    double prev = -1;
    for (BasisIndex j = 0; j <= 9; ++j) {
        const auto lam = curvature_apply(conn, FieldSection::basis(j));
        const WirtingerPolynomial expected(-2 * (static_cast<long>(j) + 1));
        const auto half_lap = GaussianRational(make_rational(-static_cast<long>(j) - 1, 2)) * laplacian(*conn.potential());
        const double at0 = std::abs(curvature_eigenvalue(conn, j).evaluate({0, 0}));
        if (lam != FieldSection::scaled_basis(expected, j) || expected != half_lap || !(at0 > prev)) {
            return {false, "eigenvalue mismatch at j=" + std::to_string(j)};
        }
        prev = at0;
    }
    const auto harmonic = ConnectionSpec::from_potential(s * s + sb * sb);
    for (BasisIndex j = 0; j <= 9; ++j) {
        if (!curvature_eigenvalue(harmonic, j).is_zero()) return {false, "harmonic potential not flat"};
    }
    testgen::Gen gen(777);
    for (int t = 0; t < 50; ++t) {
        const auto f = gen.polynomial(4);
        const auto j = static_cast<BasisIndex>(gen.uniform(0, 9));
        const auto phi = FieldSection::basis(j);
        if (curvature_apply(conn, f * phi) != f * curvature_apply(conn, phi)) return {false, "not tensorial"};
    }
    return out;
}

Outcome decay() {
    const ConnectionSpec conn(sb);
    const auto K = CompactRectangle::centered_square(Rational(1), 64);
    std::string detail;
    for (BasisIndex j : {0U, 4U}) {
        const auto cert = estimate_eps_M(one, conn, j, K);
        const auto audit = audit_certificate(cert);
        if (!audit.ok) return {false, "audit failed for j=" + std::to_string(j) + ": " + audit.detail};
        for (const auto& row : decay_report(conn, j, one, cert, 10)) {
            const double bound = decay_bound(cert, row.m);
            if (!(row.delta_scaled <= bound + kBoundRelTol * bound)) {
                return {false, "decay row m=" + std::to_string(row.m) + " exceeds bound for j=" + std::to_string(j)};
            }
        }
        const auto greedy = greedy_decay_entry(conn, j, one, cert, 12);
        if (!(greedy.delta_scaled < kSummableFraction * cert.M.get_d())) {
            return {false, "m=12 greedy entry not below 0.1 M for j=" + std::to_string(j)};
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "%sj=%u: eps=%s M=%s m12=%.3g", detail.empty() ? "" : "; ", j, format_rational(cert.epsilon).c_str(),
                      format_rational(cert.M).c_str(), greedy.delta_scaled);
        detail += buf;
    }
    return {true, detail};
}

Outcome term_type_sweep() {
    const ConnectionSpec conn(sb);
    const auto cert = estimate_eps_M(one, conn, 0, CompactRectangle::centered_square(Rational(1), 64));
    std::size_t cases = 0;
    for (unsigned m = 0; m <= 3; ++m) {
        for (const auto& dirs : all_direction_sequences(m)) {
            for (unsigned k = 1; k <= m + 1; ++k) {
                for (const auto& x : enumerate_splittings(m, k)) {
                    ++cases;
                    if (!verify_term_type_bound(x, dirs, conn, 0, one, cert)) return {false, "bound fails: " + x.key()};
                }
            }
        }
    }
    testgen::Gen gen(4444);
    for (int t = 0; t < 20; ++t) {
        std::vector<Direction> dirs;
        for (int i = 0; i < 4; ++i) dirs.push_back(gen.direction());
        const auto all = enumerate_splittings(4, static_cast<unsigned>(gen.uniform(1, 5)));
        const auto& x = all[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(all.size()) - 1))];
        ++cases;
        if (!verify_term_type_bound(x, dirs, conn, 0, one, cert)) return {false, "bound fails: " + x.key()};
    }
    return {true, std::to_string(cases) + " (splitting, sequence) pairs"};
}

Outcome negative_controls() {
    Outcome corrupted;
    {
        testing::ScopedExpansionCorruption hook;
        corrupted = identity_sweep(3);
    }
    if (corrupted.pass) return {false, "corrupted expansion still passes the identity sweep"};

    const ConnectionSpec conn(sb);
    auto cert = estimate_eps_M(one, conn, 4, CompactRectangle::centered_square(Rational(1), 64));
    const Rational minimum = cert.M * Rational(audit_certificate(cert).worst_ratio);
    cert.M = minimum / 2;
    if (cert.M <= 1) return {false, "halved M is not a valid parameter"};
    cert.delta = delta_from(cert.epsilon, cert.M);
    const auto audit = audit_certificate(cert);
    if (audit.ok) return {false, "audit accepts M below the audited minimum"};
    return {true, "corrupted expansion: " + corrupted.detail + "; halved M rejected (" + audit.detail + ")"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
        double max_seconds;
    };
    const std::vector<Criterion> criteria{
        {1, "expansion identity", [] { return identity_sweep(6); }, kIdentitySeconds},
        {2, "recursion structure", recursion_sweep, 0},
        {3, "splitting combinatorics", combinatorics, kCombinatoricsSeconds},
        {4, "smooth-structure axioms", axioms, 0},
        {5, "curvature", curvature, 0},
        {6, "analyticity decay", decay, kDecaySeconds},
        {7, "term-type bound", term_type_sweep, 0},
        {8, "negative controls", negative_controls, 0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.max_seconds > 0 && secs >= c.max_seconds) {
            out.pass = false;
            out.detail += " (over the time budget)";
        }
        if (!out.pass) ++failures;
        std::printf("criterion %d %-26s %s  [%.2fs] %s\n", c.id, c.name, out.pass ? "PASS" : "FAIL", secs,
                    out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
