#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnull/error.hpp"
#include "pnull/tree.hpp"
#include "pnull/word.hpp"

namespace pnull::dsl {

struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;
};

/// Parse failures carry the position; what() already includes it.
class ParseError : public Error {
public:
    ParseError(SourcePos pos, const std::string& msg);
    SourcePos pos() const { return pos_; }

private:
    SourcePos pos_;
};

struct TreeExpr {
    enum class Kind { Name, Full, Words, Blocks, Silver, Product, Subtree };

    Kind kind = Kind::Full;
    SourcePos pos;
    std::string name;              // Name
    std::size_t k = 0;             // Blocks
    std::vector<BinWord> words;    // Words, Blocks
    std::vector<SilverEntry> prefix;
    std::vector<SilverEntry> period;
    std::vector<TreeExpr> args;    // Product: 2, Subtree: 1
    BinWord root;                  // Subtree

    /// Structural equality; positions are ignored.
    bool same_structure(const TreeExpr& o) const;
};

struct Declaration {
    std::string name;
    TreeExpr expr;
    SourcePos pos;
};

enum class QueryKind { Classify, Measure, Trace, TraceExact, Lemma1, Table1, Table2, Phi, Lusin, ProductCheck };

struct Query {
    QueryKind kind = QueryKind::Table1;
    SourcePos pos;
    /// Tree operands in source order: classify/measure one name; trace,
    /// trace-exact and lemma1 (X, P); product-check (A, B).
    std::vector<std::string> names;
    BinWord word;                        // measure, phi
    std::optional<std::size_t> depth;    // classify, trace, product-check
    std::size_t k = 0;                   // lemma1
    std::size_t count = 0;               // lemma1 rounds, lusin stages

    bool same_structure(const Query& o) const;
};

struct Script {
    std::vector<Declaration> declarations;
    std::vector<Query> queries;

    bool same_structure(const Script& o) const;
};

inline constexpr std::string_view kBuiltins[] = {"FULL", "E", "Q", "PJ", "U", "BST"};

Script parse(std::string_view text);
/// A single tree expression; names resolve against the built-ins only.
TreeExpr parse_tree_expr(std::string_view text);

std::string pretty(const TreeExpr& e);
std::string pretty(const Query& q);
std::string pretty(const Script& s);

/// Builds the presentation for an expression. Names are looked up in
/// `env`, then among the built-ins.
Tree build(const TreeExpr& e, const std::map<std::string, Tree>& env);

struct RunOptions {
    std::size_t max_depth = 256;
    int threads = 0;  // 0: OpenMP default
};

struct QueryReport {
    std::string echo;
    std::vector<std::string> lines;
    std::optional<ErrorKind> error;
    std::string message;
    std::optional<std::string> certificate;
};

struct Report {
    std::vector<std::string> declarations;
    std::vector<QueryReport> queries;
    bool presentation_invalid = false;

    /// 0 all ok, 2 a declaration was rejected, 3 a query failed.
    int exit_code() const;
    std::string render() const;
    /// Certificates of all lemma1 queries, in query order.
    std::string certificates() const;
};

Report run(const Script& script, const RunOptions& options = {});

}  // namespace pnull::dsl
