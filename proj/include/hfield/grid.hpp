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
#include <stdexcept>
#include <vector>

#include "hfield/polynomial.hpp"

namespace hfield {

/// Raised for rectangles that do not describe a nonempty compact set.
class InvalidCompactSet : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Axis-aligned rectangle [re_min, re_max] x [im_min, im_max] sampled on a
/// uniform grid_n x grid_n lattice that contains all four corners.
class CompactRectangle {
public:
    /// Throws InvalidCompactSet if a min exceeds its max or grid_n < 2.
    CompactRectangle(Rational re_min, Rational re_max, Rational im_min, Rational im_max, unsigned grid_n);

    /// The square [-r, r]^2.
    static CompactRectangle centered_square(const Rational& r, unsigned grid_n);

    const Rational& re_min() const { return re_min_; }
    const Rational& re_max() const { return re_max_; }
    const Rational& im_min() const { return im_min_; }
    const Rational& im_max() const { return im_max_; }
    unsigned grid_n() const { return grid_n_; }

    CompactRectangle with_grid(unsigned grid_n) const {
        return {re_min_, re_max_, im_min_, im_max_, grid_n};
    }

    /// Row-major lattice points; endpoints are hit exactly.
    std::vector<std::complex<double>> points() const;

    friend bool operator==(const CompactRectangle&, const CompactRectangle&) = default;

private:
    Rational re_min_, re_max_, im_min_, im_max_;
    unsigned grid_n_;
};

/// Maximum of |a(s)| over the lattice of K. A lower bound for the true supremum.
double sup_norm_on_grid(const WirtingerPolynomial& a, const CompactRectangle& K);

/// Evaluates many polynomials on a fixed lattice, sharing power tables of s
/// and sbar across calls. Tables grow on demand.
class GridEvaluator {
public:
    explicit GridEvaluator(const CompactRectangle& K);

    std::size_t size() const { return points_.size(); }
    const std::vector<std::complex<double>>& points() const { return points_; }

    /// Values of a at every lattice point, in points() order.
    std::vector<std::complex<double>> values(const WirtingerPolynomial& a);

    /// max |a(s)| over the lattice.
    double sup_abs(const WirtingerPolynomial& a);

private:
    void ensure_degree(unsigned deg);

    std::vector<std::complex<double>> points_;
    // powers_[n][i] = s_i^n, conj_powers_[n][i] = conj(s_i)^n
    std::vector<std::vector<std::complex<double>>> powers_;
    std::vector<std::vector<std::complex<double>>> conj_powers_;
};

}  // namespace hfield
