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

#include "hfield/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hfield {

namespace {

GaussianRational index_factor(BasisIndex j) { return GaussianRational(static_cast<long>(j) + 1); }

}  // namespace

FieldSection FieldSection::from_coeffs(CoeffMap coeffs) {
    std::erase_if(coeffs, [](const auto& kv) { return kv.second.is_zero(); });
    FieldSection out;
    out.coeffs_ = std::move(coeffs);
    return out;
}

FieldSection FieldSection::basis(BasisIndex j) { return scaled_basis(WirtingerPolynomial(1), j); }

FieldSection FieldSection::scaled_basis(WirtingerPolynomial f, BasisIndex j) {
    FieldSection out;
    if (!f.is_zero()) out.coeffs_.emplace(j, std::move(f));
    return out;
}

WirtingerPolynomial FieldSection::coeff(BasisIndex l) const {
    auto it = coeffs_.find(l);
    return it == coeffs_.end() ? WirtingerPolynomial{} : it->second;
}

FieldSection& FieldSection::operator+=(const FieldSection& o) {
    for (const auto& [l, a] : o.coeffs_) {
        auto& slot = coeffs_[l];
        slot += a;
        if (slot.is_zero()) coeffs_.erase(l);
    }
    return *this;
}

FieldSection& FieldSection::operator-=(const FieldSection& o) {
    for (const auto& [l, a] : o.coeffs_) {
        auto& slot = coeffs_[l];
        slot -= a;
        if (slot.is_zero()) coeffs_.erase(l);
    }
    return *this;
}

FieldSection operator*(const WirtingerPolynomial& f, const FieldSection& phi) {
    FieldSection::CoeffMap out;
    for (const auto& [l, a] : phi.coeffs_) out.emplace(l, f * a);
    return FieldSection::from_coeffs(std::move(out));
}

std::string FieldSection::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, a] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << a << ")*phi_" << l;
    }
    return os.str();
}

ConnectionSpec::ConnectionSpec(WirtingerPolynomial k, std::optional<WirtingerPolynomial> g)
    : k_(std::move(k)), g_(std::move(g)) {
    if (!g_) return;
    if (!g_->is_real_valued()) throw std::invalid_argument("connection potential g must be real-valued");
    if (g_->derivative(Direction::D) != k_) throw std::invalid_argument("connection coefficient k must equal dg/ds");
}

ConnectionSpec ConnectionSpec::from_potential(WirtingerPolynomial g) {
    WirtingerPolynomial k = g.derivative(Direction::D);
    return ConnectionSpec(std::move(k), std::move(g));
}

WirtingerPolynomial connection_coefficient(const ConnectionSpec& conn, BasisIndex j, Direction d) {
    if (d == Direction::D) return index_factor(j) * conn.k();
    return -index_factor(j) * conn.k().conjugate();
}

FieldSection covariant_derivative(const FieldSection& phi, Direction d, const ConnectionSpec& conn) {
    FieldSection::CoeffMap out;
    for (const auto& [l, a] : phi.coeffs()) {
        out.emplace(l, a.derivative(d) + connection_coefficient(conn, l, d) * a);
    }
    return FieldSection::from_coeffs(std::move(out));
}

FieldSection iterated_covariant(const FieldSection& phi, std::span<const Direction> dirs, const ConnectionSpec& conn) {
    FieldSection out = phi;
    for (Direction d : dirs) out = covariant_derivative(out, d, conn);
    return out;
}

WirtingerPolynomial metric_pair(const FieldSection& phi, const FieldSection& psi) {
    WirtingerPolynomial out;
    for (const auto& [l, a] : phi.coeffs()) {
        auto it = psi.coeffs().find(l);
        if (it != psi.coeffs().end()) out += a * it->second.conjugate();
    }
    return out;
}

double metric_norm_at(const FieldSection& phi, std::complex<double> s) {
    const std::complex<double> v = metric_pair(phi, phi).evaluate(s);
    const double tol = 1e-9 * std::max(1.0, std::abs(v));
    if (std::abs(v.imag()) > tol || v.real() < -tol) {
        throw InternalInconsistency("h(phi, phi) evaluated off the nonnegative reals");
    }
    return std::sqrt(std::max(0.0, v.real()));
}

bool check_leibniz(const ConnectionSpec& conn, const WirtingerPolynomial& f, const FieldSection& phi, Direction d) {
    const FieldSection lhs = covariant_derivative(f * phi, d, conn);
    const FieldSection rhs = f.derivative(d) * phi + f * covariant_derivative(phi, d, conn);
    return lhs == rhs;
}

bool check_metric_compat(const ConnectionSpec& conn, const FieldSection& phi, const FieldSection& psi, Direction d) {
    const WirtingerPolynomial defect = metric_pair(phi, psi).derivative(d) -
                                       metric_pair(covariant_derivative(phi, d, conn), psi) -
                                       metric_pair(phi, covariant_derivative(psi, opposite(d), conn));
    return defect.is_zero();
}

FieldSection curvature_apply(const ConnectionSpec& conn, const FieldSection& phi) {
    const FieldSection d_dbar =
        covariant_derivative(covariant_derivative(phi, Direction::Dbar, conn), Direction::D, conn);
    const FieldSection dbar_d =
        covariant_derivative(covariant_derivative(phi, Direction::D, conn), Direction::Dbar, conn);
    return d_dbar - dbar_d;
}

WirtingerPolynomial curvature_eigenvalue_closed_form(const ConnectionSpec& conn, BasisIndex j) {
    const WirtingerPolynomial trace =
        conn.k().conjugate().derivative(Direction::D) + conn.k().derivative(Direction::Dbar);
    return -index_factor(j) * trace;
}

WirtingerPolynomial curvature_eigenvalue(const ConnectionSpec& conn, BasisIndex j) {
    const FieldSection r = curvature_apply(conn, FieldSection::basis(j));
    if (std::any_of(r.coeffs().begin(), r.coeffs().end(), [j](const auto& kv) { return kv.first != j; })) {
        throw InternalInconsistency("curvature is not diagonal on phi_" + std::to_string(j));
    }
    WirtingerPolynomial lambda = r.coeff(j);
    if (lambda != curvature_eigenvalue_closed_form(conn, j)) {
        throw InternalInconsistency("commutator eigenvalue disagrees with the closed form at j = " +
                                    std::to_string(j));
    }
    if (const auto& g = conn.potential()) {
        const WirtingerPolynomial expected =
            GaussianRational(Rational(-(static_cast<long>(j) + 1), 2)) * laplacian(*g);
        if (lambda != expected) {
            throw InternalInconsistency("eigenvalue differs from -(j+1) laplacian(g) / 2 at j = " +
                                        std::to_string(j));
        }
    }
    return lambda;
}

}  // namespace hfield
