#include <doctest.h>

#include <map>
#include <set>

#include "pnull/constructions.hpp"
#include "pnull/error.hpp"
#include "pnull/measure.hpp"
#include "pnull/splits.hpp"

using namespace pnull;

namespace {
BinWord W(const char* s) { return BinWord::parse(s); }
Rational R(long a, long b = 1) { return Rational(a, b); }
}  // namespace

TEST_CASE("named presentations") {
    CHECK(contains(named_tree(Named::E), W("000111")));
    CHECK(!contains(named_tree(Named::E), W("010")));
    CHECK(blocks_K().size() == 4);
    CHECK(blocks_L().size() == 8);
    CHECK(blocks_J().size() == 16);
    CHECK(named_from_string("PJ") == Named::PJ);
    CHECK(!named_from_string("X"));
    CHECK(named_tree(Named::E).same_as(named_tree(Named::E)));
}

TEST_CASE("projections of J") {
    const std::size_t even[] = {0, 2, 4, 6};
    const std::size_t odd[] = {1, 3, 5, 7};
    const std::size_t id[] = {0, 1, 2};
    CHECK(project_blocks(blocks_J(), even) == blocks_L());
    CHECK(project_blocks(blocks_J(), odd) == blocks_L());
    CHECK(project_blocks(blocks_K(), id) == blocks_K());
    const std::size_t bad[] = {9};
    CHECK_THROWS_AS(project_blocks(blocks_K(), bad), Error);
}

TEST_CASE("table 1 as printed") {
    // row s -> (w, mu_Q, fiber) transcribed from the printed table
    const std::map<std::string, std::tuple<std::string, Rational, std::size_t>> printed{
        {"00000000", {"0000", R(1, 16), 1}},
        {"00010111", {"0001", R(1, 16), 1}},
        {"00101011", {"0111", R(1, 4), 4}},
        {"00111111", {"0111", R(1, 4), 4}},
        {"01101011", {"0111", R(1, 4), 4}},
        {"01111111", {"0111", R(1, 4), 4}},
        {"01001010", {"0011", R(1, 8), 2}},
        {"01011111", {"0011", R(1, 8), 2}},
        {"10000101", {"1000", R(1, 16), 1}},
        {"10010111", {"1001", R(1, 16), 1}},
        {"10101111", {"1111", R(1, 4), 4}},
        {"10111111", {"1111", R(1, 4), 4}},
        {"11101111", {"1111", R(1, 4), 4}},
        {"11111111", {"1111", R(1, 4), 4}},
        {"11001111", {"1011", R(1, 8), 2}},
        {"11011111", {"1011", R(1, 8), 2}},
    };

    const auto rows = table1();
    REQUIRE(rows.size() == 16);
    for (const Table1Row& r : rows) {
        const auto& [w, mu, fiber] = printed.at(r.s.to_string());
        CHECK(r.w.to_string() == w);
        CHECK(r.mu_q == mu);
        CHECK(r.fiber == fiber);
        CHECK(r.fiber_measure == R(static_cast<long>(fiber), 16));
    }
}

TEST_CASE("table 2 as printed") {
    const std::map<std::string, std::string> printed{
        {"00000000", "0000"},
        {"00010111", "0111"},
        {"00111111", "0111"},
        {"10010111", "0111"},
        {"10111111", "0111"},
        {"00101011", "0001"},
        {"01101011", "1001"},
        {"01111111", "1111"},
        {"01011111", "1111"},
        {"11011111", "1111"},
        {"11111111", "1111"},
        {"01001010", "1000"},
        {"10000101", "0011"},
        {"10101111", "0011"},
        {"11101111", "1011"},
        {"11001111", "1011"},
    };

    const auto rows = table2();
    REQUIRE(rows.size() == 16);
    for (const Table2Row& r : rows) CHECK(r.w.to_string() == printed.at(r.s.to_string()));
}

TEST_CASE("PJ is uniform with 1/16 on every block") {
    const Tree& pj = named_tree(Named::PJ);
    const Classification c = classify(pj, 64);
    CHECK(c.uniform);
    std::set<std::size_t> residues;
    for (std::size_t n : c.splitting_lengths) residues.insert(n % 8);
    CHECK(residues == std::set<std::size_t>{0, 1, 2, 3});
    for (const BinWord& s : blocks_J()) CHECK(mu_cylinder(pj, s) == R(1, 16));
}

TEST_CASE("phi") {
    CHECK(phi(W("0")) == W("10"));
    CHECK(phi(W("1")) == W("01"));
    CHECK(phi(W("00")) == W("101000"));
    CHECK(phi(W("01")) == W("100100"));
    CHECK(phi(W("10")) == W("010010"));
    CHECK(phi(W("11")) == W("010001"));
    CHECK(phi(W("000")) == W("10100010000000"));
    CHECK(phi(BinWord{}).empty());
    CHECK_THROWS_AS(phi(BinWord::zeros(25)), Error);
    for (std::size_t l = 0; l <= 6; ++l) {
        const auto pts = phi_level(l);
        CHECK(pts.size() == (std::size_t{1} << l));
        for (std::uint64_t v = 0; v < pts.size(); ++v) {
            const BinWord w = BinWord::from_integer(v, l);
            const BinWord a = phi(w.append(0));
            const BinWord b = phi(w.append(1));
            CHECK(pts[v].is_prefix_of(a));
            CHECK(pts[v].is_prefix_of(b));
            CHECK(!a.comparable_with(b));
            CHECK(a.size() == (std::size_t{2} << (l + 1)) - 2);
        }
    }
}

TEST_CASE("Z2 independence") {
    CHECK(z2_independent({W("10"), W("01")}, 0, 2));
    CHECK(!z2_independent({W("10"), W("10")}, 0, 2));
    CHECK(!z2_independent({W("110"), W("011"), W("101")}, 0, 3));
    CHECK(z2_independent({}, 0, 0));
    CHECK_THROWS_AS(z2_independent({W("10"), W("1")}, 0, 1), Error);
    CHECK_THROWS_AS(z2_independent({W("10")}, 0, 3), Error);
    for (std::size_t l = 1; l <= 4; ++l) {
        const auto pts = phi_level(l);
        const std::size_t a = (std::size_t{1} << l) - 2, b = (std::size_t{2} << l) - 2;
        CHECK(z2_independent(pts, a, b));
        // every nonempty subset as well
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << pts.size()) && l <= 3; ++mask) {
            std::vector<BinWord> sub;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (mask >> i & 1) sub.push_back(pts[i]);
            }
            REQUIRE(z2_independent(sub, a, b));
        }
    }
    // long windows use more than one limb
    std::vector<BinWord> wide{BinWord::unit(130, 0), BinWord::unit(130, 129), BinWord::unit(130, 64)};
    CHECK(z2_independent(wide, 0, 130));
    wide.push_back(xor_sum(wide[0], wide[1]));
    CHECK(!z2_independent(wide, 0, 130));
}

TEST_CASE("Lusin tree") {
    const LusinTree t = lusin_tree(3);
    REQUIRE(t.stages.size() == 3);
    CHECK(t.stages[0].m == std::vector<std::uint64_t>{2});
    CHECK(t.stages[0].removed_mass == R(1, 4));
    CHECK(t.stages[1].nodes == std::vector<NatWord>{NatWord{0}, NatWord{1}});
    Rational total;
    for (std::size_t n = 0; n < t.stages.size(); ++n) {
        const LusinStage& s = t.stages[n];
        CHECK(s.removed_mass <= Rational::dyadic(n + 2));
        total += s.removed_mass;
        for (std::size_t i = 0; i < s.nodes.size(); ++i) {
            const std::uint64_t m = s.m[i];
            const Rational rhs = Rational::pow(R(2), n + 2) * R(static_cast<long>(s.nodes.size())) *
                                 baire_measure(s.nodes[i]);
            CHECK(m >= 2);
            CHECK(Rational::pow(R(2), m) >= rhs);
            if (m > 2) CHECK(Rational::pow(R(2), m - 1) < rhs);
        }
    }
    CHECK(total == t.total_removed);
    CHECK(total <= R(1, 2));
    CHECK_THROWS_AS(lusin_tree(3, 4), Error);
}
