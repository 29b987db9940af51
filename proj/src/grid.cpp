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

#include "hfield/grid.hpp"

#include <algorithm>

namespace hfield {

CompactRectangle::CompactRectangle(Rational re_min, Rational re_max, Rational im_min, Rational im_max,
                                   unsigned grid_n)
    : re_min_(std::move(re_min)),
      re_max_(std::move(re_max)),
      im_min_(std::move(im_min)),
      im_max_(std::move(im_max)),
      grid_n_(grid_n) {
    if (re_min_ > re_max_ || im_min_ > im_max_) {
        throw InvalidCompactSet("empty rectangle: min bound exceeds max bound");
    }
    if (grid_n_ < 2) throw InvalidCompactSet("grid_n must be at least 2 to include the corners");
}

CompactRectangle CompactRectangle::centered_square(const Rational& r, unsigned grid_n) {
    return {-r, r, -r, r, grid_n};
}

std::vector<std::complex<double>> CompactRectangle::points() const {
    // Lattice coordinates are formed exactly and rounded once.
    std::vector<double> xs(grid_n_), ys(grid_n_);
    const Rational last(static_cast<long>(grid_n_ - 1));
    for (unsigned i = 0; i < grid_n_; ++i) {
        const Rational t = Rational(static_cast<long>(i)) / last;
        xs[i] = Rational(re_min_ + (re_max_ - re_min_) * t).get_d();
        ys[i] = Rational(im_min_ + (im_max_ - im_min_) * t).get_d();
    }
    std::vector<std::complex<double>> out;
    out.reserve(static_cast<std::size_t>(grid_n_) * grid_n_);
    for (double y : ys) {
        for (double x : xs) out.emplace_back(x, y);
    }
    return out;
}

double sup_norm_on_grid(const WirtingerPolynomial& a, const CompactRectangle& K) {
    double best = 0.0;
    for (const auto& s : K.points()) best = std::max(best, std::abs(a.evaluate(s)));
    return best;
}

GridEvaluator::GridEvaluator(const CompactRectangle& K) : points_(K.points()) {
    powers_.emplace_back(points_.size(), std::complex<double>{1.0, 0.0});
    conj_powers_.emplace_back(points_.size(), std::complex<double>{1.0, 0.0});
}

void GridEvaluator::ensure_degree(unsigned deg) {
    while (powers_.size() <= deg) {
        const auto& prev = powers_.back();
        const auto& prev_c = conj_powers_.back();
        std::vector<std::complex<double>> next(points_.size()), next_c(points_.size());
        for (std::size_t i = 0; i < points_.size(); ++i) {
            next[i] = prev[i] * points_[i];
            next_c[i] = prev_c[i] * std::conj(points_[i]);
        }
        powers_.push_back(std::move(next));
        conj_powers_.push_back(std::move(next_c));
    }
}

std::vector<std::complex<double>> GridEvaluator::values(const WirtingerPolynomial& a) {
    std::vector<std::complex<double>> out(points_.size(), std::complex<double>{0.0, 0.0});
    for (const auto& [e, c] : a.terms()) {
        ensure_degree(std::max(e.p, e.q));
        const auto cz = c.to_complex();
        const auto& sp = powers_[e.p];
        const auto& sq = conj_powers_[e.q];
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += cz * sp[i] * sq[i];
    }
    return out;
}

double GridEvaluator::sup_abs(const WirtingerPolynomial& a) {
    if (a.is_zero()) return 0.0;
    double best = 0.0;
    for (const auto& v : values(a)) best = std::max(best, std::abs(v));
    return best;
}

}  // namespace hfield
