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
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hfield {

/// Arbitrary precision rational, always kept in lowest terms.
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text, or "p" when the denominator is 1.
std::string format_rational(const Rational& r);

/// n/d in lowest terms. mpq_class(n, d) alone does not reduce.
Rational make_rational(const mpz_class& n, const mpz_class& d);

/// Rational from an unsigned factorial n!.
Rational factorial(unsigned n);

/// Exact complex number with rational real and imaginary parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2 = re^2 + im^2
    Rational norm() const { return re_ * re_ + im_ * im_; }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational re = re_ * o.re_ - im_ * o.im_;
        Rational im = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(re);
        im_ = std::move(im);
        return *this;
    }
    /// Throws std::domain_error on division by zero.
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

private:
    Rational re_{0};
    Rational im_{0};
};

}  // namespace hfield
