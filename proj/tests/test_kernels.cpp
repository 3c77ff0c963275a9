#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pnull/constructions.hpp"
#include "pnull/kernels.hpp"
#include "pnull/measure.hpp"

using namespace pnull;

TEST_CASE("serial and parallel histograms agree") {
    std::mt19937_64 rng(51);
    std::vector<Tree> trees;
    for (Named n : all_named()) trees.push_back(named_tree(n));
    for (int i = 0; i < 4; ++i) trees.push_back(oracle::random_blocks(rng, 2 + rng() % 3));
    for (const Tree& p : trees) {
        if (!p.report().perfect) continue;
        for (const Tree& x : trees) {
            const auto s = kernels::serial::trace_histograms(p, x, 12);
            for (int threads : {1, 2, 4}) CHECK(kernels::parallel::trace_histograms(p, x, 12, threads) == s);
            const TraceResult t = trace_upper(p, x, 12);
            for (std::size_t d = 0; d <= 12; ++d) REQUIRE(s.mass(d) == t.upper_bounds[d]);
        }
    }
}

TEST_CASE("histograms match enumeration") {
    const Tree& p = named_tree(Named::Q);
    const Tree& x = named_tree(Named::E);
    const auto h = kernels::serial::trace_histograms(p, x, 8);
    for (std::size_t d = 0; d <= 8; ++d) {
        std::vector<std::uint64_t> want;
        for (const BinWord& w : oracle::nodes(p, d)) {
            if (!oracle::member(x, w)) continue;
            const std::size_t l = oracle::level(p, w);
            if (want.size() <= l) want.resize(l + 1);
            ++want[l];
        }
        auto got = h.counts[d];
        while (!got.empty() && got.back() == 0) got.pop_back();
        CHECK(got == want);
    }
}

TEST_CASE("product check finds no mismatches") {
    for (auto [a, b] : {std::pair{Named::E, Named::E}, std::pair{Named::U, Named::U}, std::pair{Named::Q, Named::PJ}}) {
        const auto s = kernels::serial::product_check(named_tree(a), named_tree(b), 12);
        CHECK(s.mismatches == 0);
        CHECK(s.nodes > 0);
        CHECK(kernels::parallel::product_check(named_tree(a), named_tree(b), 12, 3) == s);
    }
}
