#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "pnull/constructions.hpp"
#include "pnull/error.hpp"
#include "pnull/measure.hpp"
#include "pnull/splits.hpp"

using namespace pnull;

namespace {
BinWord W(const char* s) { return BinWord::parse(s); }
const Tree& E() { return named_tree(Named::E); }
const Tree& U() { return named_tree(Named::U); }

std::vector<BinWord> all_words_upto(std::size_t n) {
    std::vector<BinWord> out;
    for (std::size_t d = 0; d <= n; ++d) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << d); ++v) out.push_back(BinWord::from_integer(v, d));
    }
    return out;
}

// Split_i by brute force, for lengths < depth.
std::vector<std::vector<BinWord>> oracle_splits(const Tree& t, std::size_t depth) {
    std::vector<std::vector<BinWord>> out;
    for (std::size_t d = 0; d < depth; ++d) {
        for (const BinWord& w : oracle::nodes(t, d)) {
            if (!oracle::splits(t, w)) continue;
            const std::size_t l = oracle::level(t, w);
            if (out.size() <= l) out.resize(l + 1);
            out[l].push_back(w);
        }
    }
    for (auto& level : out) std::sort(level.begin(), level.end());
    return out;
}
}  // namespace

TEST_CASE("split profiles") {
    const SplitProfile full = split_profile(Tree::full(), 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(full.split_points[i].size() == (std::size_t{1} << i));
        CHECK(full.min_length[i] == i);
        CHECK(full.max_length[i] == i);
    }
    const SplitProfile e = split_profile(E(), 2);
    CHECK(e.split_points[0] == std::vector<BinWord>{BinWord{}});
    CHECK(e.split_points[1] == std::vector<BinWord>{W("0"), W("111")});
    CHECK(e.min_length[1] == 1);
    CHECK(e.max_length[1] == 3);
    const SplitProfile u = split_profile(U(), 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(u.min_length[i] == 2 * i);
        CHECK(u.max_length[i] == 2 * i);
    }
}

TEST_CASE("split profile matches enumeration") {
    std::mt19937_64 rng(3);
    std::vector<Tree> trees{E(), named_tree(Named::Q), named_tree(Named::PJ), named_tree(Named::BST)};
    for (int i = 0; i < 10; ++i) trees.push_back(oracle::random_blocks(rng, 2 + rng() % 3));
    for (const Tree& t : trees) {
        const std::size_t depth = 12;
        const auto want = oracle_splits(t, depth);
        const SplitProfile got = split_profile(t, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            // only levels completely above depth are comparable
            if (i >= want.size() || got.max_length[i] >= depth) break;
            auto show = [](const std::vector<BinWord>& ws) {
                std::string out;
                for (const BinWord& w : ws) out += w.to_string() + " ";
                return out;
            };
            INFO(t.describe(), " level ", i);
            CHECK(show(got.split_points[i]) == show(want[i]));
        }
    }
}

TEST_CASE("levels") {
    CHECK(level(E(), W("111")) == 1);
    CHECK(level(E(), W("011")) == 2);
    CHECK(level(Tree::full(), W("010110")) == 6);
    CHECK_THROWS_AS(level(E(), W("010")), Error);
    for (Named n : all_named()) {
        const Tree& t = named_tree(n);
        for (std::size_t d = 0; d <= 12; ++d) {
            for (const BinWord& w : oracle::nodes(t, d)) REQUIRE(level(t, w) == oracle::level(t, w));
        }
    }
}

TEST_CASE("classification of the named trees") {
    const Classification pj = classify(named_tree(Named::PJ), 64);
    CHECK(pj.uniform);
    CHECK(pj.exact);
    // one period past the start is listed
    CHECK(pj.splitting_lengths == std::vector<std::size_t>{0, 1, 2, 3, 8});
    for (std::size_t d = 0; d < 20; ++d) {
        const auto layer = oracle::nodes(named_tree(Named::PJ), d);
        for (const BinWord& w : layer) REQUIRE(oracle::splits(named_tree(Named::PJ), w) == (d % 8 < 4));
    }
    const Classification e = classify(E(), 64);
    CHECK(!e.balanced);
    CHECK(!e.uniform);
    const Classification u = classify(U(), 64);
    CHECK(u.uniform);
    CHECK(u.balanced);
    CHECK(!u.silver);  // forced bits differ: 0 -> 00 but 1 -> 11
    const Classification full = classify(Tree::full(), 64);
    CHECK(full.silver);
    const Classification s = classify(Tree::silver({0}, {-1, 1}), 64);
    CHECK(s.silver);
    CHECK(s.uniform);
    const Classification bst = classify(named_tree(Named::BST), 127);
    CHECK(bst.balanced);
    CHECK(!bst.uniform);
    CHECK(!bst.exact);
    for (Named n : all_named()) {
        for (const ClaimCheck& c : check_claims(make_named(n))) {
            INFO(to_string(n), " ", c.claim);
            CHECK(c.holds);
        }
    }
}

TEST_CASE("staircase has one split per length") {
    const Tree& b = named_tree(Named::BST);
    for (std::size_t d = 0; d < 40; ++d) {
        std::size_t count = 0;
        for (const BinWord& w : oracle::nodes(b, d)) count += oracle::splits(b, w);
        REQUIRE(count == 1);
    }
    std::mt19937_64 rng(5);
    for (int i = 0; i < 5; ++i) {
        const Tree r = staircase(63, rng);
        const Classification c = classify(r, 63);
        CHECK(c.balanced);
        CHECK(!c.uniform);
    }
}

TEST_CASE("classification against random block trees") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 40; ++i) {
        const Tree t = oracle::random_blocks(rng, 1 + rng() % 4);
        const Classification c = classify(t, 64);
        CHECK(c.exact);
        if (c.silver) CHECK(c.uniform);
        if (c.uniform) CHECK(c.balanced);
        // uniform by brute force: each length splits everywhere or nowhere
        bool uniform = true;
        for (std::size_t d = 0; d < 16 && uniform; ++d) {
            std::size_t splitting = 0;
            const auto layer = oracle::nodes(t, d);
            for (const BinWord& w : layer) splitting += oracle::splits(t, w);
            uniform = splitting == 0 || splitting == layer.size();
        }
        // level structure repeats with the block length, so 16 symbols decide it
        CHECK(c.uniform == uniform);
    }
}

TEST_CASE("canonical embedding") {
    for (const BinWord& w : all_words_upto(5)) CHECK(canon_embed(Tree::full(), w) == w);
    CHECK(canon_embed(E(), BinWord{}) == BinWord{});
    CHECK(canon_embed(E(), W("1")) == W("111"));
    CHECK(canon_embed(E(), W("00")) == W("00"));
    // prefix structure is preserved and images are split points
    for (Named n : {Named::E, Named::Q, Named::PJ, Named::U}) {
        const Tree& t = named_tree(n);
        const auto ws = all_words_upto(6);
        std::vector<BinWord> img;
        for (const BinWord& w : ws) img.push_back(canon_embed(t, w));
        for (std::size_t i = 0; i < ws.size(); ++i) {
            REQUIRE(oracle::splits(t, img[i]));
            REQUIRE(level(t, img[i]) == ws[i].size());
            // pushforward: the image cylinder carries 1/2^|w|
            REQUIRE(mu_cylinder(t, img[i]) == Rational::dyadic(ws[i].size()));
            for (std::size_t j = 0; j < ws.size(); ++j) {
                REQUIRE(ws[i].is_prefix_of(ws[j]) == img[i].is_prefix_of(img[j]));
            }
        }
    }
}

TEST_CASE("nodes just past S_n carry at most 1/2^(n+1)") {
    for (Named n : all_named()) {
        const Tree& t = named_tree(n);
        const SplitProfile p = split_profile(t, 6);
        for (std::size_t i = 0; i < p.levels(); ++i) {
            const std::size_t len = p.max_length[i] + 1;
            if (len > 12) break;
            for (const BinWord& w : oracle::nodes(t, len)) {
                CHECK(mu_cylinder(t, w) <= Rational::dyadic(i + 1));
            }
        }
    }
}
