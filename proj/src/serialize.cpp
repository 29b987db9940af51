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

#include "hfield/serialize.hpp"

#include <cstdint>
#include <limits>

#include <stdexcept>

namespace hfield {

namespace {

// Runs a decoder, turning JSON access errors into std::invalid_argument.
template <typename Fn>
auto decode(const char* what, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed ") + what + ": " + e.what());
    }
}

Rational rational_field(const Json& j, const char* key) {
    const Json& v = j.at(key);
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(mpz_class(std::to_string(v.get<long long>())));
    throw std::invalid_argument(std::string("field '") + key + "' must be a \"p/q\" string or an integer");
}

std::vector<unsigned> natural_list(const Json& v, const char* what) {
    if (!v.is_array()) throw std::invalid_argument(std::string(what) + " must be an array");
    std::vector<unsigned> out;
    for (const auto& x : v) out.push_back(json_natural(x, what));
    return out;
}

}  // namespace

unsigned json_natural(const Json& v, const char* what) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() > std::numeric_limits<unsigned>::max()) {
        throw std::invalid_argument(std::string(what) + " must be a nonnegative integer");
    }
    return v.get<unsigned>();
}

Json to_json(const WirtingerPolynomial& p) {
    Json out = Json::array();
    for (const auto& [e, c] : p.terms()) {
        out.push_back({{"p", e.p}, {"q", e.q}, {"re", format_rational(c.re())}, {"im", format_rational(c.im())}});
    }
    return out;
}

WirtingerPolynomial polynomial_from_json(const Json& j) {
    return decode("polynomial", [&] {
        if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON array of terms");
        WirtingerPolynomial::TermMap terms;
        for (const auto& t : j) {
            const auto p = json_natural(t.at("p"), "exponent p");
            const auto q = json_natural(t.at("q"), "exponent q");
            GaussianRational c(rational_field(t, "re"), t.contains("im") ? rational_field(t, "im") : Rational(0));
            if (!terms.emplace(Exponent{p, q}, std::move(c)).second) {
                throw std::invalid_argument("duplicate exponent pair in polynomial");
            }
        }
        return WirtingerPolynomial::from_terms(std::move(terms));
    });
}

Json to_json(const FieldSection& s) {
    Json out = Json::array();
    for (const auto& [l, a] : s.coeffs()) out.push_back({{"index", l}, {"poly", to_json(a)}});
    return out;
}

FieldSection section_from_json(const Json& j) {
    return decode("section", [&] {
        if (!j.is_array()) throw std::invalid_argument("section must be a JSON array");
        FieldSection::CoeffMap coeffs;
        for (const auto& entry : j) {
            const auto l = json_natural(entry.at("index"), "basis index");
            if (!coeffs.emplace(l, polynomial_from_json(entry.at("poly"))).second) {
                throw std::invalid_argument("duplicate basis index in section");
            }
        }
        return FieldSection::from_coeffs(std::move(coeffs));
    });
}

Json to_json(const ConnectionSpec& c) {
    Json out{{"k", to_json(c.k())}};
    if (c.potential()) out["g"] = to_json(*c.potential());
    return out;
}

ConnectionSpec connection_from_json(const Json& j) {
    return decode("connection", [&] {
        const bool has_k = j.contains("k");
        const bool has_g = j.contains("g");
        if (!has_k && !has_g) throw std::invalid_argument("connection needs \"k\" or \"g\"");
        if (!has_g) return ConnectionSpec(polynomial_from_json(j.at("k")));
        auto g = polynomial_from_json(j.at("g"));
        if (!g.is_real_valued()) throw std::invalid_argument("connection potential g must be real-valued");
        if (!has_k) return ConnectionSpec::from_potential(std::move(g));
        return ConnectionSpec(polynomial_from_json(j.at("k")), std::move(g));
    });
}

Json to_json(const KSplitting& s) { return {{"m", s.m}, {"blocks", s.blocks}, {"markers", s.markers}}; }

KSplitting splitting_from_json(const Json& j) {
    return decode("splitting", [&] {
        KSplitting s;
        s.m = json_natural(j.at("m"), "m");
        if (!j.at("blocks").is_array()) throw std::invalid_argument("blocks must be an array");
        for (const auto& b : j.at("blocks")) s.blocks.push_back(natural_list(b, "block element"));
        s.markers = natural_list(j.at("markers"), "marker");
        if (auto why = splitting_violation(s)) throw std::invalid_argument("invalid splitting: " + *why);
        return s;
    });
}

Json to_json(const CompactRectangle& K) {
    return {{"re_min", format_rational(K.re_min())}, {"re_max", format_rational(K.re_max())},
            {"im_min", format_rational(K.im_min())}, {"im_max", format_rational(K.im_max())},
            {"grid_n", K.grid_n()}};
}

CompactRectangle rectangle_from_json(const Json& j) {
    return decode("rectangle", [&] {
        return CompactRectangle(rational_field(j, "re_min"), rational_field(j, "re_max"), rational_field(j, "im_min"),
                                rational_field(j, "im_max"), json_natural(j.at("grid_n"), "grid_n"));
    });
}

Json to_json(const AnalyticityEstimate& cert) {
    Json h = Json::array();
    for (const auto& p : cert.h_set) h.push_back(to_json(p));
    return {{"epsilon", format_rational(cert.epsilon)},
            {"M", format_rational(cert.M)},
            {"delta", format_rational(cert.delta)},
            {"m_max", cert.m_max},
            {"K", to_json(cert.K)},
            {"h_set", std::move(h)},
            {"audited", cert.audited}};
}

AnalyticityEstimate certificate_from_json(const Json& j) {
    return decode("certificate", [&] {
        std::vector<WirtingerPolynomial> h_set;
        for (const auto& p : j.at("h_set")) h_set.push_back(polynomial_from_json(p));
        return AnalyticityEstimate{rational_field(j, "epsilon"),
                                   rational_field(j, "M"),
                                   rational_field(j, "delta"),
                                   json_natural(j.at("m_max"), "m_max"),
                                   rectangle_from_json(j.at("K")),
                                   std::move(h_set),
                                   j.value("audited", false)};
    });
}

}  // namespace hfield
