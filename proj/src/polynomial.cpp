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

#include "hfield/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace hfield {

namespace {

std::complex<double> ipow(std::complex<double> base, unsigned n) {
    std::complex<double> out{1.0, 0.0};
    while (n != 0) {
        if (n & 1U) out *= base;
        base *= base;
        n >>= 1U;
    }
    return out;
}

}  // namespace

const char* to_string(Direction d) { return d == Direction::D ? "D" : "Dbar"; }

WirtingerPolynomial::WirtingerPolynomial(GaussianRational c) {
    if (!c.is_zero()) terms_.emplace(Exponent{0, 0}, std::move(c));
}

WirtingerPolynomial WirtingerPolynomial::from_terms(TermMap terms) {
    std::erase_if(terms, [](const auto& kv) { return kv.second.is_zero(); });
    WirtingerPolynomial out;
    out.terms_ = std::move(terms);
    return out;
}

WirtingerPolynomial WirtingerPolynomial::monomial(GaussianRational c, unsigned p, unsigned q) {
    WirtingerPolynomial out;
    if (!c.is_zero()) out.terms_.emplace(Exponent{p, q}, std::move(c));
    return out;
}

GaussianRational WirtingerPolynomial::coeff(unsigned p, unsigned q) const {
    auto it = terms_.find(Exponent{p, q});
    return it == terms_.end() ? GaussianRational{} : it->second;
}

unsigned WirtingerPolynomial::total_degree() const {
    unsigned deg = 0;
    for (const auto& [e, c] : terms_) deg = std::max(deg, e.p + e.q);
    return deg;
}

bool WirtingerPolynomial::is_real_valued() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [this](const auto& kv) { return coeff(kv.first.q, kv.first.p) == kv.second.conj(); });
}

WirtingerPolynomial WirtingerPolynomial::conjugate() const {
    WirtingerPolynomial out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(Exponent{e.q, e.p}, c.conj());
    return out;
}

WirtingerPolynomial WirtingerPolynomial::derivative(Direction d) const {
    WirtingerPolynomial out;
    for (const auto& [e, c] : terms_) {
        if (d == Direction::D) {
            if (e.p == 0) continue;
            out.terms_.emplace(Exponent{e.p - 1, e.q}, c * GaussianRational(static_cast<long>(e.p)));
        } else {
            if (e.q == 0) continue;
            out.terms_.emplace(Exponent{e.p, e.q - 1}, c * GaussianRational(static_cast<long>(e.q)));
        }
    }
    return out;
}

std::complex<double> WirtingerPolynomial::evaluate(std::complex<double> s) const {
    const std::complex<double> sb = std::conj(s);
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [e, c] : terms_) {
        acc += c.to_complex() * ipow(s, e.p) * ipow(sb, e.q);
    }
    return acc;
}

void WirtingerPolynomial::add_term(const Exponent& e, const GaussianRational& c) {
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

WirtingerPolynomial WirtingerPolynomial::operator-() const {
    WirtingerPolynomial out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

WirtingerPolynomial& WirtingerPolynomial::operator+=(const WirtingerPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

WirtingerPolynomial& WirtingerPolynomial::operator-=(const WirtingerPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

WirtingerPolynomial& WirtingerPolynomial::operator*=(const WirtingerPolynomial& o) {
    *this = *this * o;
    return *this;
}

WirtingerPolynomial& WirtingerPolynomial::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

WirtingerPolynomial operator*(const WirtingerPolynomial& a, const WirtingerPolynomial& b) {
    WirtingerPolynomial out;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) out.add_term(Exponent{ea.p + eb.p, ea.q + eb.q}, ca * cb);
    }
    return out;
}

std::string WirtingerPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool unit = c == GaussianRational(1);
        if (!unit || (e.p == 0 && e.q == 0)) os << c;
        auto power = [&](const char* sym, unsigned n) {
            if (n == 0) return;
            if (!unit) os << "*";
            unit = false;
            os << sym;
            if (n > 1) os << "^" << n;
        };
        power("s", e.p);
        power("sbar", e.q);
    }
    return os.str();
}

WirtingerPolynomial add(const WirtingerPolynomial& a, const WirtingerPolynomial& b) { return a + b; }
WirtingerPolynomial mul(const WirtingerPolynomial& a, const WirtingerPolynomial& b) { return a * b; }
WirtingerPolynomial conjugate(const WirtingerPolynomial& a) { return a.conjugate(); }

WirtingerPolynomial wirtinger_derivative(const WirtingerPolynomial& a, Direction d) { return a.derivative(d); }

WirtingerPolynomial wirtinger_derivative(const WirtingerPolynomial& a, std::span<const Direction> dirs) {
    WirtingerPolynomial out = a;
    for (Direction d : dirs) {
        if (out.is_zero()) break;
        out = out.derivative(d);
    }
    return out;
}

WirtingerPolynomial laplacian(const WirtingerPolynomial& g) {
    return g.derivative(Direction::Dbar).derivative(Direction::D) * GaussianRational(4);
}

std::complex<double> evaluate(const WirtingerPolynomial& a, std::complex<double> s) { return a.evaluate(s); }

}  // namespace hfield
