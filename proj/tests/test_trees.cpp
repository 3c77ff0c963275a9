#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pnull/constructions.hpp"
#include "pnull/error.hpp"
#include "pnull/tree.hpp"

using namespace pnull;

namespace {
BinWord W(const char* s) { return BinWord::parse(s); }
const Tree& E() { return named_tree(Named::E); }
const Tree& U() { return named_tree(Named::U); }

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Integrity;
}

void check_agrees_with_oracle(const Tree& t, std::size_t depth) {
    for (std::size_t d = 0; d <= depth; ++d) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << d); ++v) {
            const BinWord w = BinWord::from_integer(v, d);
            const bool in = oracle::member(t, w);
            REQUIRE(contains(t, w) == in);
            if (in) {
                const std::uint8_t mask = (oracle::member(t, w.append(0)) ? 1 : 0) |
                                          (oracle::member(t, w.append(1)) ? 2 : 0);
                REQUIRE(children(t, w) == mask);
            }
        }
    }
}
}  // namespace

TEST_CASE("contains on block trees") {
    CHECK(contains(E(), W("000111")));
    CHECK(!contains(E(), W("010")));
    CHECK(contains(Tree::full(), W("0110101")));
    CHECK(children(E(), BinWord{}) == 3);
    CHECK(children(E(), W("01")) == 2);
    CHECK(children(U(), W("0")) == 1);
    CHECK(kind_of([] { children(E(), W("010")); }) == ErrorKind::NotANode);
}

TEST_CASE("explicit trees have a horizon") {
    const Tree t = Tree::explicit_tree(2, {W("00")});
    CHECK(t.report().pruned);
    CHECK(!t.report().perfect);
    CHECK(!t.report().exact);
    CHECK(contains(t, W("00")));
    CHECK(!contains(t, W("01")));
    CHECK(kind_of([&] { contains(t, W("000")); }) == ErrorKind::BeyondHorizon);
    CHECK(kind_of([] { Tree::explicit_tree(2, {W("001")}); }) == ErrorKind::InvalidPresentation);
    CHECK(kind_of([] { Tree::explicit_tree(2, {}); }) == ErrorKind::InvalidPresentation);
}

TEST_CASE("validation") {
    CHECK(E().report().perfect);
    CHECK(E().report().pruned);
    CHECK(E().report().exact);
    CHECK(kind_of([] { Tree::silver({}, {0}); }) == ErrorKind::InvalidPresentation);
    CHECK(kind_of([] { Tree::blocks(2, {W("0")}); }) == ErrorKind::InvalidPresentation);
    // a single forced branch is pruned but not perfect
    const Tree line = Tree::blocks(2, {W("01")});
    CHECK(line.report().pruned);
    CHECK(!line.report().perfect);
    CHECK(!line.report().witnesses.empty());
    // a branch of the full tree interleaved with anything perfect is perfect
    CHECK(Tree::product(Tree::blocks(1, {W("1")}), Tree::full()).report().perfect);
    // one branch on each side is a single branch
    CHECK(!Tree::product(Tree::blocks(1, {W("1")}), Tree::blocks(1, {W("0")})).report().perfect);
    for (Named n : all_named()) {
        const ValidationReport& r = named_tree(n).report();
        CHECK(r.pruned);
        CHECK(r.perfect);
        if (r.perfect) CHECK(r.pruned);
    }
}

TEST_CASE("presentations agree with brute-force membership") {
    for (Named n : all_named()) check_agrees_with_oracle(named_tree(n), 10);
    check_agrees_with_oracle(Tree::silver({-1, 0, -1}, {1, -1}), 10);
    check_agrees_with_oracle(Tree::product(E(), U()), 10);
    check_agrees_with_oracle(Tree::subtree(E(), W("011")), 10);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        const Tree a = oracle::random_blocks(rng, 1 + rng() % 4);
        const Tree b = oracle::random_silver(rng);
        check_agrees_with_oracle(a, 9);
        check_agrees_with_oracle(b, 9);
        check_agrees_with_oracle(Tree::product(a, b), 9);
    }
}

TEST_CASE("pruned trees have children everywhere") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const Tree t = oracle::random_blocks(rng, 1 + rng() % 4);
        if (!t.report().pruned) continue;
        for (std::size_t d = 0; d <= 8; ++d) {
            for (const BinWord& w : oracle::nodes(t, d)) CHECK(children(t, w) != 0);
        }
    }
}

TEST_CASE("product membership is the conjunction of the halves") {
    CHECK(oracle::nodes(Tree::product(Tree::full(), Tree::full()), 8).size() == 256);
    // 0011 deinterleaves to (01, 01), and 01 is not a node of U
    CHECK(!contains(Tree::product(U(), U()), W("0011")));
    CHECK(contains(Tree::product(U(), U()), W("0101")));
    const Tree pq = Tree::product(E(), named_tree(Named::Q));
    for (std::size_t n = 0; n <= 6; ++n) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << (2 * n)); ++v) {
            const BinWord w = BinWord::from_integer(v, 2 * n);
            const auto [a, b] = deinterleave(w);
            REQUIRE(contains(pq, w) == (contains(E(), a) && contains(named_tree(Named::Q), b)));
        }
    }
}

TEST_CASE("silver split reproduces the tree") {
    const SilverSplit all = silver_split(Tree::silver({}, {-1}));
    CHECK(!all.even_finite);
    CHECK(!all.odd_finite);
    const SilverSplit half = silver_split(Tree::silver({}, {-1, 0}));
    CHECK(!half.even_finite);
    CHECK(half.odd_finite);
    CHECK(half.odd.kind() == TreeKind::Explicit);
    CHECK(contains(half.odd, W("0000")));
    CHECK(!contains(half.odd, W("0001")));
    const Tree s = Tree::silver({-1, 0, -1, 1}, {-1, -1, 0});
    const SilverSplit parts = silver_split(s);
    const Tree back = Tree::product(parts.even, parts.odd);
    for (std::size_t d = 0; d <= 12; ++d) CHECK(oracle::nodes(back, d) == oracle::nodes(s, d));
    CHECK_THROWS_AS(silver_split(E()), Error);
}

TEST_CASE("subtree keeps nodes comparable with the root") {
    const Tree s = Tree::subtree(E(), W("011"));
    CHECK(contains(s, W("0")));
    CHECK(contains(s, W("011000")));
    CHECK(!contains(s, W("000")));
    CHECK(s.report().perfect);
    CHECK_THROWS_AS(Tree::subtree(E(), W("010")), Error);
}

TEST_CASE("describe is stable") {
    CHECK(Tree::full().describe() == "full");
    CHECK(U().describe() == "blocks(2){00 11}");
    CHECK(Tree::product(Tree::full(), U()).describe() == "product(full,blocks(2){00 11})");
}
