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

#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "hfield/splitting.hpp"

using namespace hfield;

namespace {

const WirtingerPolynomial s = WirtingerPolynomial::s();
const WirtingerPolynomial sb = WirtingerPolynomial::sbar();

// Stirling numbers of the second kind by the textbook recurrence.
std::uint64_t stirling2(unsigned n, unsigned k) {
    std::vector<std::vector<std::uint64_t>> S(n + 1, std::vector<std::uint64_t>(n + 2, 0));
    S[0][0] = 1;
    for (unsigned a = 1; a <= n; ++a) {
        for (unsigned b = 1; b <= a; ++b) S[a][b] = b * S[a - 1][b] + S[a - 1][b - 1];
    }
    return k <= n ? S[n][k] : 0;
}

std::uint64_t binom(unsigned n, unsigned k) {
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

KSplitting spl(unsigned m, std::vector<std::vector<unsigned>> blocks, std::vector<unsigned> markers) {
    return KSplitting{m, std::move(blocks), std::move(markers)};
}

}  // namespace

TEST_CASE("enumerate_splittings small cases") {
    CHECK(count_splittings(0, 1) == 1);
    CHECK(enumerate_splittings(0, 1).front() == spl(0, {{}}, {}));
    CHECK(count_splittings(1, 2) == 1);
    CHECK(enumerate_splittings(1, 2).front() == spl(1, {{}, {}}, {1}));
    const auto two = enumerate_splittings(2, 2);
    REQUIRE(two.size() == 3);
    const std::set<KSplitting> expected{spl(2, {{}, {1}}, {2}), spl(2, {{2}, {}}, {1}), spl(2, {{}, {2}}, {1})};
    CHECK(std::set<KSplitting>(two.begin(), two.end()) == expected);
    CHECK(count_splittings(3, 0) == 0);
    CHECK(count_splittings(3, 5) == 0);
}

TEST_CASE("counts are Stirling numbers and rows total to Bell numbers") {
    std::uint64_t total2 = 0, total3 = 0;
    for (unsigned k = 1; k <= 3; ++k) total2 += count_splittings(2, k);
    for (unsigned k = 1; k <= 4; ++k) total3 += count_splittings(3, k);
    CHECK(total2 == 5);
    CHECK(total3 == 15);
    for (unsigned m = 0; m <= 8; ++m) {
        for (unsigned k = 1; k <= m + 1; ++k) CHECK(count_splittings(m, k) == stirling2(m + 1, k));
    }
}

TEST_CASE("recursive enumerator agrees with brute force") {
    for (unsigned m = 0; m <= 6; ++m) {
        for (unsigned k = 0; k <= m + 2; ++k) {
            const auto a = enumerate_splittings(m, k);
            const auto b = enumerate_splittings_brute_force(m, k);
            CHECK(a == b);
            CHECK(std::is_sorted(a.begin(), a.end()));
            for (const auto& x : a) CHECK(is_valid_splitting(x));
        }
    }
}

TEST_CASE("counting recursion N(m+1,k) = N(m,k-1) + k N(m,k)") {
    for (unsigned m = 0; m < 8; ++m) {
        for (unsigned k = 1; k <= m + 2; ++k) {
            const std::uint64_t prev = k >= 2 ? count_splittings(m, k - 1) : 0;
            CHECK(count_splittings(m + 1, k) == prev + k * count_splittings(m, k));
        }
    }
}

TEST_CASE("splitting_violation rejects malformed records") {
    CHECK(splitting_violation(spl(2, {{}, {1}}, {2})) == std::nullopt);
    CHECK(splitting_violation(spl(2, {{1}, {}}, {2})).has_value());     // 1 does not exceed marker 2
    CHECK(splitting_violation(spl(2, {{}, {}, {}}, {1, 2})).has_value());  // markers increasing
    CHECK(splitting_violation(spl(2, {{}, {1, 2}}, {2})).has_value());  // 2 covered twice, block ascending
    CHECK(splitting_violation(spl(3, {{}, {1}}, {2})).has_value());     // 3 missing
    CHECK(splitting_violation(spl(1, {}, {})).has_value());
    CHECK(splitting_violation(spl(2, {{}}, {2})).has_value());
}

TEST_CASE("classify") {
    CHECK(classify(spl(2, {{}, {1}}, {2})) == SplittingType::Type1);
    CHECK(classify(spl(2, {{2}, {}}, {1})) == SplittingType::Type2);
    CHECK(classify(spl(2, {{}, {2}}, {1})) == SplittingType::Type2);
    CHECK(classify(spl(2, {{2, 1}}, {})) == SplittingType::Type2);
    CHECK_THROWS_AS(classify(spl(0, {{}}, {})), std::invalid_argument);
}

TEST_CASE("type-1 correspondence") {
    CHECK(drop_leading_marker(spl(2, {{}, {1}}, {2})) == spl(1, {{1}}, {}));
    CHECK(adjoin_leading_marker(spl(1, {{1}}, {})) == spl(2, {{}, {1}}, {2}));
    const auto pairing = type1_bijection(1, 2);
    REQUIRE(pairing.pairs.size() == 1);
    CHECK(pairing.pairs.front().first == spl(2, {{}, {1}}, {2}));
    for (unsigned m = 0; m <= 6; ++m) {
        for (unsigned k = 2; k <= m + 2; ++k) {
            const auto p = type1_bijection(m, k);
            CHECK(p.pairs.size() == count_splittings(m, k - 1));
            for (const auto& [big, small] : p.pairs) {
                CHECK(classify(big) == SplittingType::Type1);
                CHECK(adjoin_leading_marker(small) == big);
            }
        }
    }
    CHECK_THROWS(type1_bijection(2, 1));
}

TEST_CASE("type-2 correspondence") {
    const auto cover = type2_correspondence(1, 2);
    REQUIRE(cover.groups.size() == 1);
    const std::set<KSplitting> images(cover.groups[0].second.begin(), cover.groups[0].second.end());
    CHECK(images == std::set<KSplitting>{spl(2, {{2}, {}}, {1}), spl(2, {{}, {2}}, {1})});

    const auto c22 = type2_correspondence(2, 2);
    std::size_t n_images = 0;
    for (const auto& [src, imgs] : c22.groups) n_images += imgs.size();
    CHECK(n_images == 6);

    for (unsigned m = 0; m <= 6; ++m) {
        for (unsigned k = 1; k <= m + 1; ++k) {
            const auto c = type2_correspondence(m, k);
            std::set<KSplitting> all;
            for (const auto& [src, imgs] : c.groups) {
                CHECK(imgs.size() == k);
                for (const auto& x : imgs) {
                    CHECK(classify(x) == SplittingType::Type2);
                    all.insert(x);
                }
            }
            // Disjoint images covering every type-2 splitting of m+1.
            CHECK(all.size() == k * count_splittings(m, k));
            const std::uint64_t type1 = k >= 2 ? count_splittings(m, k - 1) : 0;
            CHECK(all.size() == count_splittings(m + 1, k) - type1);
        }
    }
}

TEST_CASE("term types") {
    CHECK(term_type(spl(2, {{}, {1}}, {2})) == std::vector<unsigned>{1, 2});
    CHECK(term_type(spl(2, {{2, 1}}, {})) == std::vector<unsigned>{3});
    const std::vector<unsigned> parts{2, 1, 1};
    CHECK(multinomial(4, parts) == 12);
    for (unsigned m = 1; m <= 6; ++m) {
        for (unsigned k = 1; k <= m + 1; ++k) {
            std::map<std::vector<unsigned>, std::uint64_t> per_type;
            for (const auto& x : enumerate_splittings(m, k)) {
                const auto l = term_type(x);
                unsigned sum = 0;
                for (unsigned v : l) {
                    CHECK(v >= 1);
                    sum += v;
                }
                CHECK(sum == m + 1);
                ++per_type[l];
            }
            CHECK(per_type.size() == binom(m, k - 1));
            for (const auto& [l, count] : per_type) {
                // Labels assigned to blocks of sizes l-1 and to the marker set.
                std::vector<unsigned> slots;
                for (unsigned v : l) slots.push_back(v - 1);
                slots.push_back(k - 1);
                CHECK(count <= multinomial(m, slots));
            }
        }
    }
}

TEST_CASE("splitting_term by hand") {
    const ConnectionSpec conn(sb);
    const std::vector<Direction> dirs{Direction::D, Direction::Dbar};
    // a_1 = sbar, a_2 = -s, f = s
    CHECK(splitting_term(spl(2, {{}, {1}}, {2}), dirs, conn, 0, s) == -s);
    CHECK(splitting_term(spl(2, {{2}, {}}, {1}), dirs, conn, 0, s) == s);
    CHECK(splitting_term(spl(2, {{}, {2}}, {1}), dirs, conn, 0, s).is_zero());
    CHECK(splitting_term(spl(2, {{2, 1}}, {}), dirs, conn, 0, s).is_zero());
    CHECK(splitting_term(spl(2, {{}, {}, {}}, {2, 1}), dirs, conn, 0, s) == -(s * s * sb));
    CHECK(expansion_T(2, dirs, conn, 0, s) == -(s * s * sb));
    CHECK_THROWS_AS(splitting_term(spl(2, {{2, 1}}, {}), std::vector<Direction>{Direction::D}, conn, 0, s),
                    std::invalid_argument);
    CHECK_THROWS_AS(expansion_T(3, dirs, conn, 0, s), std::invalid_argument);
}

TEST_CASE("first order expansion is eta_1 f + a_1 f") {
    testgen::Gen gen(12);
    for (int t = 0; t < 20; ++t) {
        const auto conn = gen.connection();
        const auto f = gen.polynomial();
        const auto d = gen.direction();
        const auto j = static_cast<BasisIndex>(gen.uniform(0, 5));
        const std::vector<Direction> dirs{d};
        CHECK(expansion_T(1, dirs, conn, j, f) == f.derivative(d) + connection_coefficient(conn, j, d) * f);
    }
}

TEST_CASE("flat connection reduces to plain derivatives") {
    const ConnectionSpec flat{WirtingerPolynomial{}};
    const auto f = WirtingerPolynomial::monomial(1, 3, 3);
    for (unsigned m = 0; m <= 4; ++m) {
        for (const auto& dirs : all_direction_sequences(m)) {
            CHECK(expansion_T(m, dirs, flat, 2, f) == wirtinger_derivative(f, dirs));
        }
    }
}

TEST_CASE("all_direction_sequences") {
    CHECK(all_direction_sequences(0).size() == 1);
    const auto three = all_direction_sequences(3);
    REQUIRE(three.size() == 8);
    CHECK(three.front() == std::vector<Direction>(3, Direction::D));
    CHECK(three.back() == std::vector<Direction>(3, Direction::Dbar));
    CHECK(std::is_sorted(three.begin(), three.end()));
}

TEST_CASE("expansion equals the literal sum of splitting terms") {
    testgen::Gen gen(55);
    for (int t = 0; t < 15; ++t) {
        const auto conn = gen.connection(3);
        const auto f = gen.polynomial(3);
        const auto j = static_cast<BasisIndex>(gen.uniform(0, 4));
        const auto m = static_cast<unsigned>(gen.uniform(0, 4));
        std::vector<Direction> dirs;
        for (unsigned i = 0; i < m; ++i) dirs.push_back(gen.direction());
        WirtingerPolynomial sum;
        for (unsigned k = 1; k <= m + 1; ++k) {
            for (const auto& x : enumerate_splittings(m, k)) sum += splitting_term(x, dirs, conn, j, f);
        }
        CHECK(expansion_T(m, dirs, conn, j, f) == sum);
    }
}

TEST_CASE("identity sweep") {
    const SplittingTable table(5);
    const std::vector<WirtingerPolynomial> fs{WirtingerPolynomial(1), s, s * sb};
    const std::vector<ConnectionSpec> conns{ConnectionSpec(sb), ConnectionSpec(s * sb * sb),
                                            ConnectionSpec(WirtingerPolynomial{})};
    for (const auto& conn : conns) {
        for (BasisIndex j : {0U, 1U, 4U}) {
            for (const auto& f : fs) {
                for (unsigned m = 0; m <= 5; ++m) {
                    for (const auto& dirs : all_direction_sequences(m)) {
                        CHECK(verify_identity(table, dirs, conn, j, f));
                        if (m >= 1) CHECK(recursion_check_S1_S2(dirs, conn, j, f));
                    }
                }
            }
        }
    }
}

TEST_CASE("property: identity on random inputs") {
    testgen::Gen gen(909);
    for (int t = 0; t < 40; ++t) {
        const auto conn = gen.connection(3);
        const auto f = gen.polynomial(3);
        const auto j = static_cast<BasisIndex>(gen.uniform(0, 6));
        const auto m = static_cast<unsigned>(gen.uniform(1, 5));
        std::vector<Direction> dirs;
        for (unsigned i = 0; i < m; ++i) dirs.push_back(gen.direction());
        CHECK(verify_identity(m, dirs, conn, j, f));
        CHECK(recursion_check_S1_S2(dirs, conn, j, f));
    }
}
