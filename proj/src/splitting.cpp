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

#include "hfield/splitting.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "hfield/testing_hooks.hpp"

namespace hfield {

#ifdef HFIELD_TEST_HOOKS
namespace testing {
namespace {
std::atomic<bool> g_expansion_corrupted{false};
}
bool expansion_corrupted() { return g_expansion_corrupted.load(); }
void set_expansion_corrupted(bool on) { g_expansion_corrupted.store(on); }
}  // namespace testing
#endif

std::string KSplitting::key() const {
    std::ostringstream os;
    os << "m=" << m << "|";
    for (std::size_t a = 0; a < blocks.size(); ++a) {
        if (a) os << ",";
        os << "{";
        for (std::size_t t = 0; t < blocks[a].size(); ++t) os << (t ? " " : "") << blocks[a][t];
        os << "}";
    }
    os << "|";
    for (std::size_t t = 0; t < markers.size(); ++t) os << (t ? "," : "") << markers[t];
    return os.str();
}

std::optional<std::string> splitting_violation(const KSplitting& spl) {
    if (spl.blocks.empty()) return "a splitting needs at least one block";
    if (spl.markers.size() + 1 != spl.blocks.size()) return "k must equal the number of markers plus one";
    if (!std::is_sorted(spl.markers.begin(), spl.markers.end(), std::greater<>{}) ||
        std::adjacent_find(spl.markers.begin(), spl.markers.end()) != spl.markers.end()) {
        return "markers must be strictly decreasing";
    }
    std::vector<unsigned> seen(spl.m + 1, 0);
    auto mark = [&](unsigned x) -> bool {
        if (x < 1 || x > spl.m) return false;
        ++seen[x];
        return true;
    };
    for (unsigned x : spl.markers) {
        if (!mark(x)) return "marker " + std::to_string(x) + " outside {1..m}";
    }
    for (std::size_t a = 0; a < spl.blocks.size(); ++a) {
        const auto& block = spl.blocks[a];
        if (std::adjacent_find(block.begin(), block.end(), std::less_equal<>{}) != block.end()) {
            return "block " + std::to_string(a + 1) + " is not stored in strictly decreasing order";
        }
        for (unsigned x : block) {
            if (!mark(x)) return "block element " + std::to_string(x) + " outside {1..m}";
            if (a + 1 < spl.blocks.size() && x <= spl.markers[a]) {
                return "element " + std::to_string(x) + " of block " + std::to_string(a + 1) +
                       " does not exceed its marker " + std::to_string(spl.markers[a]);
            }
        }
    }
    for (unsigned x = 1; x <= spl.m; ++x) {
        if (seen[x] != 1) {
            return "element " + std::to_string(x) + " is covered " + std::to_string(seen[x]) + " times";
        }
    }
    return std::nullopt;
}

KSplitting adjoin_leading_marker(const KSplitting& spl) {
    KSplitting out;
    out.m = spl.m + 1;
    out.blocks.reserve(spl.blocks.size() + 1);
    out.blocks.emplace_back();
    out.blocks.insert(out.blocks.end(), spl.blocks.begin(), spl.blocks.end());
    out.markers.reserve(spl.markers.size() + 1);
    out.markers.push_back(out.m);
    out.markers.insert(out.markers.end(), spl.markers.begin(), spl.markers.end());
    return out;
}

KSplitting drop_leading_marker(const KSplitting& type1) {
    if (type1.k() < 2 || type1.markers.empty() || type1.markers.front() != type1.m || !type1.blocks.front().empty()) {
        throw CorrespondenceFailure("not a type-1 splitting with I_1 = {} and i_1 = m+1: " + type1.key());
    }
    KSplitting out;
    out.m = type1.m - 1;
    out.blocks.assign(type1.blocks.begin() + 1, type1.blocks.end());
    out.markers.assign(type1.markers.begin() + 1, type1.markers.end());
    return out;
}

namespace {

// The k splittings of m+1 obtained by putting m+1 at the front of each block.
std::vector<KSplitting> insert_top_element(const KSplitting& spl) {
    std::vector<KSplitting> out;
    out.reserve(spl.k());
    for (std::size_t a = 0; a < spl.k(); ++a) {
        KSplitting next = spl;
        next.m = spl.m + 1;
        next.blocks[a].insert(next.blocks[a].begin(), next.m);
        out.push_back(std::move(next));
    }
    return out;
}

bool in_range(unsigned m, unsigned k) { return k >= 1 && k <= m + 1; }

// Calls fn(subset) for every (size)-subset of {1..m}, listed in decreasing order.
template <typename Fn>
void for_each_subset(unsigned m, unsigned size, Fn&& fn) {
    if (size > m) return;
    std::vector<unsigned> pick(size);
    for (unsigned i = 0; i < size; ++i) pick[i] = i + 1;
    while (true) {
        std::vector<unsigned> desc(pick.rbegin(), pick.rend());
        fn(desc);
        int i = static_cast<int>(size) - 1;
        while (i >= 0 && pick[i] == m - size + 1 + static_cast<unsigned>(i)) --i;
        if (i < 0) return;
        ++pick[i];
        for (unsigned t = static_cast<unsigned>(i) + 1; t < size; ++t) pick[t] = pick[t - 1] + 1;
    }
}

}  // namespace

SplittingTable::SplittingTable(unsigned max_m) {
    rows_.resize(max_m + 1);
    rows_[0].resize(2);
    rows_[0][1].push_back(KSplitting{0, {{}}, {}});
    for (unsigned m = 0; m < max_m; ++m) {
        auto& next = rows_[m + 1];
        next.resize(m + 3);
        for (unsigned k = 1; k <= m + 2; ++k) {
            auto& cell = next[k];
            if (k >= 2) {
                for (const auto& spl : rows_[m][k - 1]) cell.push_back(adjoin_leading_marker(spl));
            }
            if (k <= m + 1) {
                for (const auto& spl : rows_[m][k]) {
                    for (auto& img : insert_top_element(spl)) cell.push_back(std::move(img));
                }
            }
            std::sort(cell.begin(), cell.end());
        }
    }
}

std::span<const KSplitting> SplittingTable::get(unsigned m, unsigned k) const {
    if (m > max_m()) throw std::out_of_range("splitting table built only up to m = " + std::to_string(max_m()));
    if (!in_range(m, k)) return {};
    return rows_[m][k];
}

std::vector<KSplitting> enumerate_splittings(unsigned m, unsigned k) {
    if (!in_range(m, k)) return {};
    SplittingTable table(m);
    auto cell = table.get(m, k);
    return {cell.begin(), cell.end()};
}

std::vector<KSplitting> enumerate_splittings_brute_force(unsigned m, unsigned k) {
    std::vector<KSplitting> out;
    if (!in_range(m, k)) return out;
    // Pick the k-1 markers, then try every assignment of the remaining
    // elements to the k blocks and keep what the invariant checker accepts.
    for_each_subset(m, k - 1, [&](const std::vector<unsigned>& markers) {
        std::vector<unsigned> rest;
        for (unsigned x = m; x >= 1; --x) {
            if (std::find(markers.begin(), markers.end(), x) == markers.end()) rest.push_back(x);
        }
        std::vector<unsigned> slot(rest.size(), 0);
        while (true) {
            KSplitting cand;
            cand.m = m;
            cand.markers = markers;
            cand.blocks.resize(k);
            for (std::size_t t = 0; t < rest.size(); ++t) cand.blocks[slot[t]].push_back(rest[t]);
            if (is_valid_splitting(cand)) out.push_back(std::move(cand));
            std::size_t t = 0;
            while (t < slot.size() && ++slot[t] == k) slot[t++] = 0;
            if (t == slot.size()) break;
        }
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t count_splittings(unsigned m, unsigned k) { return enumerate_splittings(m, k).size(); }

SplittingType classify(const KSplitting& spl) {
    if (spl.m == 0) throw std::invalid_argument("classify expects a splitting of m+1 >= 1");
    return std::find(spl.markers.begin(), spl.markers.end(), spl.m) != spl.markers.end() ? SplittingType::Type1
                                                                                        : SplittingType::Type2;
}

namespace {

std::vector<KSplitting> brute_force_of_type(unsigned m_plus_1, unsigned k, SplittingType type) {
    auto all = enumerate_splittings_brute_force(m_plus_1, k);
    std::erase_if(all, [type](const KSplitting& s) { return classify(s) != type; });
    return all;
}

bool contains(const std::vector<KSplitting>& sorted, const KSplitting& s) {
    return std::binary_search(sorted.begin(), sorted.end(), s);
}

void require(bool ok, const std::string& what) {
    if (!ok) throw CorrespondenceFailure(what);
}

}  // namespace

Type1Pairing type1_bijection(unsigned m, unsigned k) {
    if (k < 2 || k > m + 2) throw std::invalid_argument("type1_bijection requires 2 <= k <= m+2");
    const auto left = brute_force_of_type(m + 1, k, SplittingType::Type1);
    const auto right = enumerate_splittings_brute_force(m, k - 1);

    Type1Pairing out{m, k, {}};
    std::set<KSplitting> images;
    for (const auto& t : left) {
        KSplitting img = drop_leading_marker(t);
        require(is_valid_splitting(img), "type-1 image is not a valid splitting: " + img.key());
        require(contains(right, img), "type-1 image missing from the (k-1)-splittings of m: " + img.key());
        require(adjoin_leading_marker(img) == t, "adjoin does not invert drop at " + t.key());
        require(images.insert(img).second, "two type-1 splittings share the image " + img.key());
        out.pairs.emplace_back(t, std::move(img));
    }
    for (const auto& r : right) {
        KSplitting pre = adjoin_leading_marker(r);
        require(is_valid_splitting(pre), "adjoined splitting is invalid: " + pre.key());
        require(classify(pre) == SplittingType::Type1, "adjoined splitting is not type 1: " + pre.key());
        require(contains(left, pre), "adjoined splitting missing from the type-1 class: " + pre.key());
        require(drop_leading_marker(pre) == r, "drop does not invert adjoin at " + r.key());
    }
    require(images.size() == right.size(), "type-1 correspondence is not onto");
    return out;
}

Type2Cover type2_correspondence(unsigned m, unsigned k) {
    if (!in_range(m, k)) throw std::invalid_argument("type2_correspondence requires 1 <= k <= m+1");
    const auto sources = enumerate_splittings_brute_force(m, k);
    const auto targets = brute_force_of_type(m + 1, k, SplittingType::Type2);

    Type2Cover out{m, k, {}};
    std::set<KSplitting> covered;
    for (const auto& src : sources) {
        auto imgs = insert_top_element(src);
        std::set<KSplitting> distinct(imgs.begin(), imgs.end());
        require(distinct.size() == k, "insertion does not yield k distinct splittings for " + src.key());
        for (const auto& img : imgs) {
            require(is_valid_splitting(img), "inserted splitting is invalid: " + img.key());
            require(classify(img) == SplittingType::Type2, "inserted splitting is not type 2: " + img.key());
            require(contains(targets, img), "inserted splitting missing from the type-2 class: " + img.key());
            require(covered.insert(img).second, "type-2 splitting reached twice: " + img.key());
        }
        out.groups.emplace_back(src, std::move(imgs));
    }
    require(covered.size() == targets.size(), "type-2 class is not covered");
    return out;
}

std::vector<unsigned> term_type(const KSplitting& spl) {
    std::vector<unsigned> out;
    out.reserve(spl.k());
    for (const auto& block : spl.blocks) out.push_back(static_cast<unsigned>(block.size()) + 1);
    return out;
}

std::uint64_t multinomial(unsigned n, std::span<const unsigned> parts) {
    unsigned total = 0;
    for (unsigned l : parts) total += l;
    if (total != n) throw std::invalid_argument("multinomial parts must sum to n");
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), n);
    for (unsigned l : parts) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), l);
        num /= f;
    }
    return num.get_ui();
}

namespace {

// eta_I applied to base: I is stored decreasing and eta_{i_1} is outermost,
// so the smallest index acts first.
WirtingerPolynomial apply_block(const WirtingerPolynomial& base, const std::vector<unsigned>& block,
                                std::span<const Direction> dirs) {
    WirtingerPolynomial out = base;
    for (auto it = block.rbegin(); it != block.rend() && !out.is_zero(); ++it) out = out.derivative(dirs[*it - 1]);
    return out;
}

// Memoized derivatives for one (conn, j, f, dirs) cell. Coordinate Wirtinger
// derivatives commute, so eta_I h depends only on how many D and Dbar I holds.
class TermFactors {
public:
    TermFactors(const ConnectionSpec& conn, BasisIndex j, const WirtingerPolynomial& f, std::span<const Direction> dirs)
        : dirs_(dirs) {
        bases_[0] = f;
        bases_[1] = connection_coefficient(conn, j, Direction::D);
        bases_[2] = connection_coefficient(conn, j, Direction::Dbar);
    }

    const WirtingerPolynomial& f_factor(const std::vector<unsigned>& block) { return lookup(0, block); }
    const WirtingerPolynomial& a_factor(unsigned marker, const std::vector<unsigned>& block) {
        return lookup(dirs_[marker - 1] == Direction::D ? 1 : 2, block);
    }

private:
    const WirtingerPolynomial& lookup(int base, const std::vector<unsigned>& block) {
        unsigned nd = 0;
        for (unsigned x : block) nd += dirs_[x - 1] == Direction::D ? 1 : 0;
        const unsigned nb = static_cast<unsigned>(block.size()) - nd;
        auto key = std::make_tuple(base, nd, nb);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        WirtingerPolynomial v = bases_[base];
        for (unsigned t = 0; t < nd && !v.is_zero(); ++t) v = v.derivative(Direction::D);
        for (unsigned t = 0; t < nb && !v.is_zero(); ++t) v = v.derivative(Direction::Dbar);
        return cache_.emplace(key, std::move(v)).first->second;
    }

    std::span<const Direction> dirs_;
    WirtingerPolynomial bases_[3];
    std::map<std::tuple<int, unsigned, unsigned>, WirtingerPolynomial> cache_;
};

}  // namespace

WirtingerPolynomial splitting_term(const KSplitting& spl, std::span<const Direction> dirs, const ConnectionSpec& conn,
                                   BasisIndex j, const WirtingerPolynomial& f) {
    if (dirs.size() != spl.m) throw std::invalid_argument("direction sequence length must equal the splitting's m");
    WirtingerPolynomial term = apply_block(f, spl.blocks.back(), dirs);
    for (std::size_t a = 0; a + 1 < spl.k() && !term.is_zero(); ++a) {
        const WirtingerPolynomial coeff = connection_coefficient(conn, j, dirs[spl.markers[a] - 1]);
        term = apply_block(coeff, spl.blocks[a], dirs) * term;
    }
    return term;
}

WirtingerPolynomial expansion_T(const SplittingTable& table, std::span<const Direction> dirs,
                                const ConnectionSpec& conn, BasisIndex j, const WirtingerPolynomial& f) {
    const auto m = static_cast<unsigned>(dirs.size());
    TermFactors factors(conn, j, f, dirs);
    WirtingerPolynomial total;
    for (unsigned k = 1; k <= m + 1; ++k) {
        for (const auto& spl : table.get(m, k)) {
            WirtingerPolynomial term = factors.f_factor(spl.blocks.back());
            for (std::size_t a = 0; a + 1 < spl.k() && !term.is_zero(); ++a) {
                term = factors.a_factor(spl.markers[a], spl.blocks[a]) * term;
            }
#ifdef HFIELD_TEST_HOOKS
            if (k == 2 && testing::expansion_corrupted()) term = -term;
#endif
            total += term;
        }
    }
    return total;
}

WirtingerPolynomial expansion_T(unsigned m, std::span<const Direction> dirs, const ConnectionSpec& conn, BasisIndex j,
                                const WirtingerPolynomial& f) {
    if (dirs.size() != m) throw std::invalid_argument("direction sequence length must equal m");
    return expansion_T(SplittingTable(m), dirs, conn, j, f);
}

bool verify_identity(const SplittingTable& table, std::span<const Direction> dirs, const ConnectionSpec& conn,
                     BasisIndex j, const WirtingerPolynomial& f) {
    const FieldSection lhs = iterated_covariant(FieldSection::scaled_basis(f, j), dirs, conn);
    const FieldSection rhs = FieldSection::scaled_basis(expansion_T(table, dirs, conn, j, f), j);
    return lhs == rhs;
}

bool verify_identity(unsigned m, std::span<const Direction> dirs, const ConnectionSpec& conn, BasisIndex j,
                     const WirtingerPolynomial& f) {
    if (dirs.size() != m) throw std::invalid_argument("direction sequence length must equal m");
    return verify_identity(SplittingTable(m), dirs, conn, j, f);
}

bool recursion_check_S1_S2(std::span<const Direction> dirs, const ConnectionSpec& conn, BasisIndex j,
                           const WirtingerPolynomial& f) {
    if (dirs.empty()) throw std::invalid_argument("recursion check needs at least one direction");
    const auto next = static_cast<unsigned>(dirs.size());
    const SplittingTable table(next);

    WirtingerPolynomial s1, s2;
    for (unsigned k = 1; k <= next + 1; ++k) {
        for (const auto& spl : table.get(next, k)) {
            auto term = splitting_term(spl, dirs, conn, j, f);
            (classify(spl) == SplittingType::Type1 ? s1 : s2) += term;
        }
    }
    const Direction last = dirs.back();
    const WirtingerPolynomial t_prev = expansion_T(table, dirs.first(next - 1), conn, j, f);
    const WirtingerPolynomial t_next = expansion_T(table, dirs, conn, j, f);
    return s1 == connection_coefficient(conn, j, last) * t_prev && s2 == t_prev.derivative(last) &&
           t_next == s1 + s2;
}

std::vector<std::vector<Direction>> all_direction_sequences(unsigned m) {
    std::vector<std::vector<Direction>> out;
    const std::uint64_t n = std::uint64_t{1} << m;
    out.reserve(n);
    for (std::uint64_t code = 0; code < n; ++code) {
        std::vector<Direction> seq(m);
        for (unsigned i = 0; i < m; ++i) {
            seq[i] = ((code >> (m - 1 - i)) & 1U) ? Direction::Dbar : Direction::D;
        }
        out.push_back(std::move(seq));
    }
    return out;
}

}  // namespace hfield
