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

// JSON encodings shared by configs and reports.
//
//   polynomial    [{"p": 1, "q": 0, "re": "1/2", "im": "0"}, ...]   (sorted, no zero terms)
//   section       [{"index": 3, "poly": <polynomial>}, ...]
//   connection    {"k": <polynomial>, "g": <polynomial>}             ("g" optional)
//   splitting     {"m": 3, "blocks": [[3], [], []], "markers": [2, 1]}
//   rectangle     {"re_min": "-1", "re_max": "1", "im_min": "-1", "im_max": "1", "grid_n": 64}
//   certificate   {"epsilon": "1/2", "M": "..", "delta": "..", "m_max": 2, "K": <rectangle>,
//                  "h_set": [<polynomial>, ...], "audited": true}
//
// Decoders throw std::invalid_argument on malformed input.

#include "json.hpp"

#include "hfield/analyticity.hpp"
#include "hfield/field.hpp"
#include "hfield/grid.hpp"
#include "hfield/polynomial.hpp"
#include "hfield/splitting.hpp"

namespace hfield {

using Json = nlohmann::json;

/// v as an unsigned; throws std::invalid_argument for negatives, fractions and non-numbers.
unsigned json_natural(const Json& v, const char* what);

Json to_json(const WirtingerPolynomial& p);
WirtingerPolynomial polynomial_from_json(const Json& j);

Json to_json(const FieldSection& s);
FieldSection section_from_json(const Json& j);

/// A connection may be given by "k", by "g" (then k = dg/ds), or by both.
Json to_json(const ConnectionSpec& c);
ConnectionSpec connection_from_json(const Json& j);

Json to_json(const KSplitting& s);
KSplitting splitting_from_json(const Json& j);

Json to_json(const CompactRectangle& K);
CompactRectangle rectangle_from_json(const Json& j);

Json to_json(const AnalyticityEstimate& cert);
AnalyticityEstimate certificate_from_json(const Json& j);

}  // namespace hfield
