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
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hfield/field.hpp"
#include "hfield/polynomial.hpp"

namespace hfield {

/// A k-splitting of {1, ..., m}: blocks I_1..I_k and markers i_1 > ... > i_{k-1}.
///
/// Block contents are stored in decreasing order, which is also the order in
/// which eta_I composes its derivatives (eta_I = eta_{i_1} ... eta_{i_l} with
/// i_1 > ... > i_l). Blocks may be empty.
struct KSplitting {
    unsigned m = 0;
    std::vector<std::vector<unsigned>> blocks;
    std::vector<unsigned> markers;

    std::size_t k() const { return blocks.size(); }

    /// Canonical text such as "m=3|{3},{},{}|2,1". Two splittings are equal iff their keys are.
    std::string key() const;

    friend auto operator<=>(const KSplitting&, const KSplitting&) = default;
};

/// Reason the record violates a splitting invariant, or nullopt if it is valid.
std::optional<std::string> splitting_violation(const KSplitting& spl);
inline bool is_valid_splitting(const KSplitting& spl) { return !splitting_violation(spl).has_value(); }

/// Raised when one of the two correspondences fails to be a bijection / exact cover.
class CorrespondenceFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// All distinct k-splittings of m in sorted order; empty outside 1 <= k <= m+1.
/// Built row by row from the type-1 / type-2 correspondences.
std::vector<KSplitting> enumerate_splittings(unsigned m, unsigned k);

/// Same set, obtained by filtering every assignment of {1..m} to k blocks or a
/// marker slot through splitting_violation. Independent of enumerate_splittings.
std::vector<KSplitting> enumerate_splittings_brute_force(unsigned m, unsigned k);

/// |enumerate_splittings(m, k)|.
std::uint64_t count_splittings(unsigned m, unsigned k);

/// Precomputed splittings of 0..max_m, shared read-only across many expansions.
class SplittingTable {
public:
    explicit SplittingTable(unsigned max_m);

    unsigned max_m() const { return static_cast<unsigned>(rows_.size()) - 1; }
    /// Splittings of m with k blocks; empty span when k is out of range.
    std::span<const KSplitting> get(unsigned m, unsigned k) const;

private:
    // rows_[m][k] for k in [0, m+1]; index 0 is always empty.
    std::vector<std::vector<std::vector<KSplitting>>> rows_;
};

enum class SplittingType { Type1, Type2 };

/// For a splitting of m+1 (spl.m >= 1): Type1 iff spl.m is a marker.
/// Throws std::invalid_argument for spl.m == 0.
SplittingType classify(const KSplitting& spl);

/// Verified pairing between type-1 k-splittings of m+1 and (k-1)-splittings of m.
struct Type1Pairing {
    unsigned m = 0;
    unsigned k = 0;
    /// (type-1 splitting of m+1, its image among the (k-1)-splittings of m)
    std::vector<std::pair<KSplitting, KSplitting>> pairs;
};

/// Drops I_1 = {} and i_1 = m+1 / adjoins them back, and checks both maps are
/// total, mutually inverse, and land in valid splittings. Requires 2 <= k <= m+2.
/// Throws CorrespondenceFailure on any violation.
Type1Pairing type1_bijection(unsigned m, unsigned k);

/// Forward and inverse maps of the type-1 correspondence, exposed for testing.
KSplitting drop_leading_marker(const KSplitting& type1);
KSplitting adjoin_leading_marker(const KSplitting& spl);

/// Verified 1-to-k cover of the type-2 k-splittings of m+1 by k-splittings of m.
struct Type2Cover {
    unsigned m = 0;
    unsigned k = 0;
    /// source k-splitting of m and the k splittings of m+1 obtained by inserting m+1 into each block
    std::vector<std::pair<KSplitting, std::vector<KSplitting>>> groups;
};

/// Inserts m+1 at the front of each block in turn. Requires 1 <= k <= m+1.
/// Throws CorrespondenceFailure on overlap, omission, or an invalid image.
Type2Cover type2_correspondence(unsigned m, unsigned k);

/// Block sizes plus one, (|I_1|+1, ..., |I_k|+1); sums to m+1.
std::vector<unsigned> term_type(const KSplitting& spl);

/// (n; l_1, ..., l_k) = n! / (l_1! ... l_k!). Requires sum(l) == n.
std::uint64_t multinomial(unsigned n, std::span<const unsigned> parts);

/// (eta_{I_1} a_{i_1}) ... (eta_{I_{k-1}} a_{i_{k-1}}) eta_{I_k} f with
/// a_i = connection_coefficient(conn, j, dirs[i-1]).
/// Throws std::invalid_argument if dirs.size() != spl.m.
WirtingerPolynomial splitting_term(const KSplitting& spl, std::span<const Direction> dirs, const ConnectionSpec& conn,
                                   BasisIndex j, const WirtingerPolynomial& f);

/// T^m: the sum of splitting_term over every k-splitting of m, k = 1..m+1.
/// Throws std::invalid_argument if dirs.size() != m.
WirtingerPolynomial expansion_T(unsigned m, std::span<const Direction> dirs, const ConnectionSpec& conn, BasisIndex j,
                                const WirtingerPolynomial& f);
WirtingerPolynomial expansion_T(const SplittingTable& table, std::span<const Direction> dirs,
                                const ConnectionSpec& conn, BasisIndex j, const WirtingerPolynomial& f);

/// iterated_covariant(f phi_j, dirs) == expansion_T(...) phi_j, exactly.
bool verify_identity(unsigned m, std::span<const Direction> dirs, const ConnectionSpec& conn, BasisIndex j,
                     const WirtingerPolynomial& f);
bool verify_identity(const SplittingTable& table, std::span<const Direction> dirs, const ConnectionSpec& conn,
                     BasisIndex j, const WirtingerPolynomial& f);

/// Sums S_1 (type-1) and S_2 (type-2) over the splittings of m+1 = dirs.size()
/// and checks S_1 == a_{m+1} T^m, S_2 == eta_{m+1} T^m, T^{m+1} == S_1 + S_2.
/// Requires dirs nonempty.
bool recursion_check_S1_S2(std::span<const Direction> dirs, const ConnectionSpec& conn, BasisIndex j,
                           const WirtingerPolynomial& f);

/// Every direction sequence of length m, in lexicographic order with D < Dbar.
std::vector<std::vector<Direction>> all_direction_sequences(unsigned m);

}  // namespace hfield
