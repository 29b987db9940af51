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

#include "hfield/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hfield {

namespace {

bool is_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t pos = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (pos == s.size()) return false;
    for (; pos < s.size(); ++pos) {
        if (!std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
    }
    return true;
}

mpz_class parse_integer(std::string_view s) {
    if (!is_integer_text(s)) {
        throw std::invalid_argument("malformed rational component '" + std::string(s) + "'");
    }
    if (s[0] == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text));
    }
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational make_rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw std::domain_error("zero denominator");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    Rational d = o.norm();
    if (sgn(d) == 0) throw std::domain_error("GaussianRational division by zero");
    *this *= o.conj();
    re_ /= d;
    im_ /= d;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    if (z.is_real()) return os << format_rational(z.re_);
    if (sgn(z.re_) == 0) return os << format_rational(z.im_) << "i";
    os << "(" << format_rational(z.re_);
    if (sgn(z.im_) > 0) os << "+";
    return os << format_rational(z.im_) << "i)";
}

}  // namespace hfield
