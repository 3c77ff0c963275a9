#include <doctest.h>

#include "pnull/error.hpp"
#include "pnull/word.hpp"

using namespace pnull;

namespace {
BinWord W(const char* s) { return BinWord::parse(s); }

std::vector<BinWord> all_words(std::size_t n) {
    std::vector<BinWord> out;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(BinWord::from_integer(v, n));
    return out;
}
}  // namespace

TEST_CASE("subword and select") {
    CHECK(subword(W("00010111"), 0, 3) == W("0001"));
    CHECK(subword(W("00010111"), 4, 7) == W("0111"));
    CHECK(subword(W("0110"), 2, 2) == W("1"));
    CHECK(select(W("00010111"), {0, 2, 4, 6}) == W("0001"));
    CHECK(select(W("00010111"), {1, 3, 5, 7}) == W("0111"));
    CHECK(select(W("00010111"), {}).empty());
    const BinWord w = W("1011001");
    CHECK(subword(w, 0, w.size() - 1) == w);
}

TEST_CASE("subword and select reject bad indices") {
    CHECK_THROWS_AS(subword(W("01"), 0, 2), Error);
    CHECK_THROWS_AS(subword(W("011"), 2, 1), Error);
    CHECK_THROWS_AS(select(W("01"), {5}), Error);
    try {
        select(W("01"), {2});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IndexOutOfRange);
    }
}

TEST_CASE("xor_sum") {
    CHECK(xor_sum(W("10"), W("01")) == W("11"));
    CHECK(xor_sum(W("101000"), W("100100")) == W("001100"));
    CHECK_THROWS_AS(xor_sum(W("1"), W("10")), Error);
    // exhaustive algebra on short words
    for (std::size_t n = 0; n <= 4; ++n) {
        const auto ws = all_words(n);
        for (const auto& a : ws) {
            CHECK(xor_sum(a, a) == BinWord::zeros(n));
            for (const auto& b : ws) {
                CHECK(xor_sum(a, b) == xor_sum(b, a));
                for (const auto& c : ws) CHECK(xor_sum(xor_sum(a, b), c) == xor_sum(a, xor_sum(b, c)));
            }
        }
    }
    for (const auto& a : all_words(8)) CHECK(xor_sum(a, a) == BinWord::zeros(8));
}

TEST_CASE("interleave round trip") {
    CHECK(interleave(W("00"), W("11")) == W("0101"));
    // positionwise: 0,0,0,1,0,1,1,1
    CHECK(interleave(W("0001"), W("0111")) == W("00010111"));
    CHECK(select(interleave(W("0001"), W("0111")), {0, 2, 4, 6}) == W("0001"));
    CHECK(interleave(W("101"), W("01")) == W("10011"));
    CHECK_THROWS_AS(interleave(W("1"), W("011")), Error);
    for (std::size_t n = 0; n <= 5; ++n) {
        for (const auto& u : all_words(n)) {
            for (const auto& v : all_words(n)) {
                const BinWord w = interleave(u, v);
                CHECK(deinterleave(w) == std::pair{u, v});
                std::vector<std::size_t> ev, od;
                for (std::size_t i = 0; i < n; ++i) {
                    ev.push_back(2 * i);
                    od.push_back(2 * i + 1);
                }
                CHECK(select(w, ev) == u);
                CHECK(select(w, od) == v);
            }
        }
    }
}

TEST_CASE("textual forms") {
    CHECK(BinWord{}.to_string() == "ε");
    CHECK(BinWord::parse("ε").empty());
    CHECK(BinWord::parse("").empty());
    CHECK_THROWS_AS(BinWord::parse("012"), Error);
    CHECK(NatWord{1, 0, 7}.to_string() == "[1,0,7]");
    CHECK(NatWord::parse("[1,0,7]") == NatWord{1, 0, 7});
    CHECK(NatWord::parse("[]").empty());
    CHECK(BinWord::unit(4, 2) == W("0010"));
    CHECK(BinWord::from_integer(5, 4) == W("0101"));
    CHECK(W("0101").to_integer() == 5);
}

TEST_CASE("ordering puts prefixes first") {
    CHECK(W("0") < W("00"));
    CHECK(W("00") < W("01"));
    CHECK(W("011") < W("1"));
    CHECK(W("01").is_prefix_of(W("011")));
    CHECK(!W("011").is_prefix_of(W("01")));
    CHECK(W("01").comparable_with(W("011")));
    CHECK(!W("00").comparable_with(W("01")));
}
