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

// Seeded generators for property tests.

#include <complex>
#include <random>

#include "hfield/field.hpp"
#include "hfield/polynomial.hpp"

namespace hfield::testgen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return uniform(0, 1) == 1; }

    Rational small_rational() {
        return make_rational(uniform(-5, 5), uniform(1, 4));
    }

    GaussianRational gaussian() { return {small_rational(), coin() ? small_rational() : Rational(0)}; }

    /// Random polynomial with total degree <= max_degree and up to max_terms terms.
    WirtingerPolynomial polynomial(unsigned max_degree = 4, int max_terms = 4) {
        WirtingerPolynomial out;
        const int n = uniform(0, max_terms);
        for (int t = 0; t < n; ++t) {
            const auto p = static_cast<unsigned>(uniform(0, static_cast<int>(max_degree)));
            const auto q = static_cast<unsigned>(uniform(0, static_cast<int>(max_degree - p)));
            out += WirtingerPolynomial::monomial(gaussian(), p, q);
        }
        return out;
    }

    /// Real-valued polynomial p + conj(p).
    WirtingerPolynomial real_polynomial(unsigned max_degree = 4) {
        auto p = polynomial(max_degree);
        return p + p.conjugate();
    }

    Direction direction() { return coin() ? Direction::D : Direction::Dbar; }

    FieldSection section(unsigned max_index = 6, unsigned max_degree = 4) {
        FieldSection::CoeffMap coeffs;
        const int n = uniform(0, 3);
        for (int t = 0; t < n; ++t) {
            coeffs[static_cast<BasisIndex>(uniform(0, static_cast<int>(max_index)))] = polynomial(max_degree);
        }
        return FieldSection::from_coeffs(std::move(coeffs));
    }

    ConnectionSpec connection(unsigned max_degree = 4) {
        if (coin()) return ConnectionSpec::from_potential(real_polynomial(max_degree));
        return ConnectionSpec(polynomial(max_degree));
    }

    std::complex<double> point() {
        return {std::uniform_real_distribution<double>(-1.5, 1.5)(rng_),
                std::uniform_real_distribution<double>(-1.5, 1.5)(rng_)};
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace hfield::testgen
