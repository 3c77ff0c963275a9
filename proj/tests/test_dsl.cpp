#include <doctest.h>

#include <random>

#include "pnull/certificate.hpp"
#include "pnull/dsl.hpp"
#include "pnull/error.hpp"
#include "pnull/tree.hpp"

using namespace pnull;
using namespace pnull::dsl;

namespace {
SourcePos parse_error_at(std::string_view text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.pos();
    }
    FAIL("parsed: ", text);
    return {};
}

const char* kScript = R"(# sample
tree E2 = blocks(3){000 001 011 111}
tree P = product(E2, subtree(U, 00))
tree S = silver[-1 0]repeat[1 -1]
tree Fin = words{00 01 11}
query measure Q cylinder 0111
query trace U in FULL depth 10
query trace-exact E2 in FULL
query lemma1 U in FULL k 2 rounds 4
query classify PJ depth 32
query classify S
query table1
query table2
query phi 000
query lusin stages 3
query product-check E2 S depth 8
query measure Fin cylinder ε
)";
}  // namespace

TEST_CASE("parse the sample script") {
    const Script s = parse(kScript);
    REQUIRE(s.declarations.size() == 4);
    CHECK(s.declarations[0].name == "E2");
    CHECK(s.declarations[0].expr.kind == TreeExpr::Kind::Blocks);
    CHECK(s.declarations[0].expr.k == 3);
    CHECK(s.declarations[1].expr.kind == TreeExpr::Kind::Product);
    CHECK(s.declarations[1].expr.args[1].kind == TreeExpr::Kind::Subtree);
    CHECK(s.declarations[1].pos.line == 3);
    REQUIRE(s.queries.size() == 12);
    CHECK(s.queries[0].kind == QueryKind::Measure);
    CHECK(s.queries[0].pos.line == 6);
    CHECK(s.queries[1].depth == 10);
    CHECK(s.queries[3].k == 2);
    CHECK(s.queries[3].count == 4);
    CHECK(s.queries[3].names == std::vector<std::string>{"U", "FULL"});
    CHECK(!s.queries[5].depth);
    CHECK(s.queries[11].word.empty());
}

TEST_CASE("pretty printing round trips") {
    const Script s = parse(kScript);
    const std::string text = pretty(s);
    const Script back = parse(text);
    CHECK(back.same_structure(s));
    CHECK(pretty(back) == text);
}

TEST_CASE("random scripts round trip") {
    std::mt19937_64 rng(61);
    const std::vector<std::string> exprs{"full", "words{0 1}", "blocks(2){00 11}", "silver[]repeat[-1]",
                                         "silver[0 1]repeat[-1 0 1]", "E", "product(U, full)",
                                         "subtree(blocks(1){0 1}, 0101)", "product(subtree(Q, ε), PJ)"};
    const std::vector<std::string> queries{"classify T0", "classify T0 depth 9", "measure T0 cylinder 01",
                                           "trace T0 in FULL", "trace U in T0 depth 4", "trace-exact T0 in E",
                                           "lemma1 T0 in FULL k 3 rounds 1", "table1", "table2", "phi 0110",
                                           "lusin stages 2", "product-check T0 U", "product-check E T0 depth 6"};
    for (int round = 0; round < 50; ++round) {
        std::string text = "tree T0 = " + exprs[rng() % exprs.size()] + "\n";
        const std::size_t nq = 1 + rng() % 6;
        for (std::size_t i = 0; i < nq; ++i) text += "query " + queries[rng() % queries.size()] + "\n";
        const Script s = parse(text);
        CHECK(parse(pretty(s)).same_structure(s));
    }
}

TEST_CASE("parse errors carry positions") {
    CHECK(parse_error_at("tree A = blocks(3){00}").line == 1);
    CHECK(parse_error_at("tree A = full\ntree A = full").line == 2);
    CHECK(parse_error_at("query measure Nope cylinder 0").line == 1);
    CHECK(parse_error_at("query trace U FULL").line == 1);
    CHECK(parse_error_at("tree A = full\n\nquery frobnicate").line == 3);
    CHECK(parse_error_at("tree A = product(full)").line == 1);
    CHECK(parse_error_at("tree A = silver[2]repeat[-1]").line == 1);
    CHECK(parse_error_at("tree full = full").line == 1);
    CHECK(parse_error_at("query phi 012").line == 1);
    CHECK(parse_error_at("tree A = full trailing").line == 1);
    const SourcePos p = parse_error_at("tree A = full\nquery measure A cylinder 2");
    CHECK(p.line == 2);
    CHECK(p.column > 1);
    try {
        parse("tree A = full\ntree A = full");
    } catch (const ParseError& e) {
        CHECK(e.kind() == ErrorKind::Parse);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("run reports") {
    const Report r = run(parse(kScript));
    CHECK(r.exit_code() == 0);
    const std::string out = r.render();
    CHECK(out.find("query 1: measure Q cylinder 0111\n  = 1/4\n  status ok") != std::string::npos);
    CHECK(out.find("depth 10: 1/32") != std::string::npos);
    CHECK(out.find("bound 81/256") != std::string::npos);
    CHECK(out.find("replay ok") != std::string::npos);
    CHECK(out.find("= 10100010000000") != std::string::npos);
    // every emitted certificate replays
    const auto certs = parse_certificates(r.certificates());
    REQUIRE(certs.size() == 1);
    const std::map<std::string, Tree> none;
    check_certificate(build(parse_tree_expr(certs[0].host), none), build(parse_tree_expr(certs[0].target), none),
                      certs[0]);
}

TEST_CASE("exit codes") {
    CHECK(run(parse("tree S = silver[-1 0]repeat[0]\nquery classify S")).exit_code() == 2);
    const Report bad = run(parse("tree S = silver[-1 0]repeat[0]\nquery classify S"));
    CHECK(bad.declarations[0].find("rejected") != std::string::npos);
    CHECK(bad.queries[0].error == ErrorKind::InvalidPresentation);
    const Report q = run(parse("query lemma1 U in U k 2 rounds 2\nquery measure Q cylinder 0111"));
    CHECK(q.exit_code() == 3);
    CHECK(q.queries[0].error == ErrorKind::WitnessNotFound);
    CHECK(!q.queries[1].error);  // later queries still run
    const Report deep = run(parse("query trace U in BST depth 200"), {256, 1});
    CHECK(deep.queries[0].error == ErrorKind::BeyondHorizon);
    const Report capped = run(parse("query trace U in FULL depth 40"), {20, 1});
    CHECK(capped.queries[0].error == ErrorKind::CapExceeded);
    const Report fallback = run(parse("query trace-exact U in BST"));
    CHECK(!fallback.queries[0].error);
    CHECK(fallback.render().find("method depth-bounded") != std::string::npos);
}

TEST_CASE("reports do not depend on the thread count") {
    const Script s = parse(kScript);
    const std::string one = run(s, {256, 1}).render();
    CHECK(run(s, {256, 4}).render() == one);
    CHECK(run(s, {256, 1}).render() == one);
}
