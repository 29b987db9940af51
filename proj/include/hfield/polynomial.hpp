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

#include <compare>
#include <complex>
#include <map>
#include <ostream>
#include <span>
#include <string>

#include "hfield/rational.hpp"

namespace hfield {

/// One of the two coordinate Wirtinger derivations.
enum class Direction {
    D,     ///< d/ds
    Dbar,  ///< d/d(s-bar)
};

constexpr Direction opposite(Direction d) { return d == Direction::D ? Direction::Dbar : Direction::D; }

const char* to_string(Direction d);

/// Exponent pair (p, q) of the monomial s^p sbar^q.
struct Exponent {
    unsigned p = 0;
    unsigned q = 0;

    friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

/// Finite sum of c_{p,q} s^p sbar^q with exact Gaussian rational coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// mathematical equality. Values are immutable in practice: every operation
/// returns a fresh polynomial.
class WirtingerPolynomial {
public:
    using TermMap = std::map<Exponent, GaussianRational>;

    WirtingerPolynomial() = default;
    WirtingerPolynomial(GaussianRational c);  // NOLINT(google-explicit-constructor)
    WirtingerPolynomial(long c) : WirtingerPolynomial(GaussianRational(c)) {}  // NOLINT

    /// Builds from an arbitrary term map, dropping zero coefficients.
    static WirtingerPolynomial from_terms(TermMap terms);
    static WirtingerPolynomial monomial(GaussianRational c, unsigned p, unsigned q);
    static WirtingerPolynomial s() { return monomial(1, 1, 0); }
    static WirtingerPolynomial sbar() { return monomial(1, 0, 1); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of s^p sbar^q (zero when absent).
    GaussianRational coeff(unsigned p, unsigned q) const;

    /// Largest p + q over stored terms; 0 for constants and for the zero polynomial.
    unsigned total_degree() const;

    /// c_{p,q} == conj(c_{q,p}) for every (p, q).
    bool is_real_valued() const;

    WirtingerPolynomial conjugate() const;
    WirtingerPolynomial derivative(Direction d) const;

    std::complex<double> evaluate(std::complex<double> s) const;

    WirtingerPolynomial operator-() const;
    WirtingerPolynomial& operator+=(const WirtingerPolynomial& o);
    WirtingerPolynomial& operator-=(const WirtingerPolynomial& o);
    WirtingerPolynomial& operator*=(const WirtingerPolynomial& o);
    WirtingerPolynomial& operator*=(const GaussianRational& c);

    friend WirtingerPolynomial operator+(WirtingerPolynomial a, const WirtingerPolynomial& b) { return a += b; }
    friend WirtingerPolynomial operator-(WirtingerPolynomial a, const WirtingerPolynomial& b) { return a -= b; }
    friend WirtingerPolynomial operator*(const WirtingerPolynomial& a, const WirtingerPolynomial& b);
    friend WirtingerPolynomial operator*(WirtingerPolynomial a, const GaussianRational& c) { return a *= c; }
    friend WirtingerPolynomial operator*(const GaussianRational& c, WirtingerPolynomial a) { return a *= c; }

    friend bool operator==(const WirtingerPolynomial&, const WirtingerPolynomial&) = default;

    /// Human readable form such as "2*s*sbar - 1/3i*s^2".
    std::string to_string() const;
    friend std::ostream& operator<<(std::ostream& os, const WirtingerPolynomial& p) { return os << p.to_string(); }

private:
    void add_term(const Exponent& e, const GaussianRational& c);

    TermMap terms_;
};

// Free-function spellings of the core operations.

WirtingerPolynomial add(const WirtingerPolynomial& a, const WirtingerPolynomial& b);
WirtingerPolynomial mul(const WirtingerPolynomial& a, const WirtingerPolynomial& b);
WirtingerPolynomial conjugate(const WirtingerPolynomial& a);
WirtingerPolynomial wirtinger_derivative(const WirtingerPolynomial& a, Direction d);

/// Applies the derivatives innermost-first: dirs[0] acts first.
WirtingerPolynomial wirtinger_derivative(const WirtingerPolynomial& a, std::span<const Direction> dirs);

/// 4 * d^2 g / ds dsbar, the flat Laplacian in (Re s, Im s).
WirtingerPolynomial laplacian(const WirtingerPolynomial& g);

std::complex<double> evaluate(const WirtingerPolynomial& a, std::complex<double> s);

}  // namespace hfield
