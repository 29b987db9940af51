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
#include <span>
#include <stdexcept>
#include <string>

#include "hfield/polynomial.hpp"

namespace hfield {

/// Basis index l of the orthonormal frame phi_0, phi_1, ...
using BasisIndex = unsigned;

/// Raised when a computation that must hold by construction does not.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Finitely supported section sum_l a_l(s) phi_l. Zero coefficients are never stored.
class FieldSection {
public:
    using CoeffMap = std::map<BasisIndex, WirtingerPolynomial>;

    FieldSection() = default;
    static FieldSection from_coeffs(CoeffMap coeffs);

    /// phi_j
    static FieldSection basis(BasisIndex j);
    /// f * phi_j
    static FieldSection scaled_basis(WirtingerPolynomial f, BasisIndex j);

    const CoeffMap& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Coefficient of phi_l (zero when absent).
    WirtingerPolynomial coeff(BasisIndex l) const;

    FieldSection& operator+=(const FieldSection& o);
    FieldSection& operator-=(const FieldSection& o);
    friend FieldSection operator+(FieldSection a, const FieldSection& b) { return a += b; }
    friend FieldSection operator-(FieldSection a, const FieldSection& b) { return a -= b; }
    /// Pointwise multiplication by a scalar function.
    friend FieldSection operator*(const WirtingerPolynomial& f, const FieldSection& phi);

    friend bool operator==(const FieldSection&, const FieldSection&) = default;

    std::string to_string() const;
    friend std::ostream& operator<<(std::ostream& os, const FieldSection& s) { return os << s.to_string(); }

private:
    CoeffMap coeffs_;
};

/// The diagonal connection nabla_D phi_j = (j+1) k phi_j, nabla_Dbar phi_j = -(j+1) conj(k) phi_j.
///
/// When built from a real potential g the coefficient is k = dg/ds.
class ConnectionSpec {
public:
    /// Throws std::invalid_argument if g is given but not real-valued or k != dg/ds.
    explicit ConnectionSpec(WirtingerPolynomial k, std::optional<WirtingerPolynomial> g = std::nullopt);

    static ConnectionSpec from_potential(WirtingerPolynomial g);

    const WirtingerPolynomial& k() const { return k_; }
    const std::optional<WirtingerPolynomial>& potential() const { return g_; }

    friend bool operator==(const ConnectionSpec&, const ConnectionSpec&) = default;

private:
    WirtingerPolynomial k_;
    std::optional<WirtingerPolynomial> g_;
};

/// a(d) for basis index j: (j+1) k for D, -(j+1) conj(k) for Dbar.
WirtingerPolynomial connection_coefficient(const ConnectionSpec& conn, BasisIndex j, Direction d);

FieldSection covariant_derivative(const FieldSection& phi, Direction d, const ConnectionSpec& conn);

/// nabla_{dirs[m-1]} ... nabla_{dirs[0]} phi: dirs[0] is applied first.
FieldSection iterated_covariant(const FieldSection& phi, std::span<const Direction> dirs, const ConnectionSpec& conn);

/// h(phi, psi) = sum_l a_l conj(b_l) for the orthonormal frame.
WirtingerPolynomial metric_pair(const FieldSection& phi, const FieldSection& psi);

/// sqrt(h(phi, phi))(s). Evaluations within 1e-9 of the nonnegative reals are clamped.
double metric_norm_at(const FieldSection& phi, std::complex<double> s);

/// nabla_d (f phi) == (d f) phi + f nabla_d phi, exactly.
bool check_leibniz(const ConnectionSpec& conn, const WirtingerPolynomial& f, const FieldSection& phi, Direction d);

/// d h(phi, psi) == h(nabla_d phi, psi) + h(phi, nabla_{opposite d} psi), exactly.
bool check_metric_compat(const ConnectionSpec& conn, const FieldSection& phi, const FieldSection& psi, Direction d);

/// R(d/ds, d/dsbar) phi = nabla_D nabla_Dbar phi - nabla_Dbar nabla_D phi.
/// The bracket of the coordinate fields vanishes.
FieldSection curvature_apply(const ConnectionSpec& conn, const FieldSection& phi);

/// lambda_j with R phi_j = lambda_j phi_j, read off the commutator and then
/// cross-checked against -(j+1)(d conj(k)/ds + dk/dsbar), and against
/// -(j+1) laplacian(g) / 2 when a potential is present.
/// Throws InternalInconsistency if any of these disagree.
WirtingerPolynomial curvature_eigenvalue(const ConnectionSpec& conn, BasisIndex j);

/// -(j+1)(d conj(k)/ds + dk/dsbar) without going through the commutator.
WirtingerPolynomial curvature_eigenvalue_closed_form(const ConnectionSpec& conn, BasisIndex j);

}  // namespace hfield
