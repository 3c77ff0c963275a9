#include "pnull/dsl.hpp"

#include <algorithm>
#include <set>

#include "pnull/constructions.hpp"

namespace pnull::dsl {

ParseError::ParseError(SourcePos pos, const std::string& msg)
    : Error(ErrorKind::Parse,
            "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + msg),
      pos_(pos) {}

bool TreeExpr::same_structure(const TreeExpr& o) const {
    if (kind != o.kind || name != o.name || k != o.k || words != o.words || prefix != o.prefix ||
        period != o.period || root != o.root || args.size() != o.args.size()) {
        return false;
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (!args[i].same_structure(o.args[i])) return false;
    }
    return true;
}

bool Query::same_structure(const Query& o) const {
    return kind == o.kind && names == o.names && word == o.word && depth == o.depth && k == o.k &&
           count == o.count;
}

bool Script::same_structure(const Script& o) const {
    if (declarations.size() != o.declarations.size() || queries.size() != o.queries.size()) return false;
    for (std::size_t i = 0; i < declarations.size(); ++i) {
        if (declarations[i].name != o.declarations[i].name ||
            !declarations[i].expr.same_structure(o.declarations[i].expr)) {
            return false;
        }
    }
    for (std::size_t i = 0; i < queries.size(); ++i) {
        if (!queries[i].same_structure(o.queries[i])) return false;
    }
    return true;
}

namespace {

struct Token {
    std::string text;
    std::size_t column;
};

bool is_punct(char c) {
    return c == '(' || c == ')' || c == '{' || c == '}' || c == '[' || c == ']' || c == ',' || c == '=';
}

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (is_punct(c)) {
            out.push_back({std::string(1, c), i + 1});
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#' &&
               !is_punct(line[i])) {
            ++i;
        }
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

const std::set<std::string, std::less<>> kReserved{"full", "words", "blocks", "silver", "repeat",
                                                   "product", "subtree", "tree", "query", "eps"};

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    if (!alpha(s[0])) return false;
    return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

class LineParser {
public:
    LineParser(std::vector<Token> tokens, std::size_t line, std::size_t line_length,
               const std::set<std::string, std::less<>>& known)
        : toks_(std::move(tokens)), line_(line), end_column_(line_length + 1), known_(known) {}

    bool at_end() const { return i_ >= toks_.size(); }
    const Token* peek() const { return at_end() ? nullptr : &toks_[i_]; }
    SourcePos pos() const { return {line_, at_end() ? end_column_ : toks_[i_].column}; }

    [[noreturn]] void error(const std::string& msg) const { throw ParseError(pos(), msg); }

    const Token& take(std::string_view what) {
        if (at_end()) error("expected " + std::string(what) + " at end of line");
        return toks_[i_++];
    }

    void expect(std::string_view text) {
        if (at_end() || toks_[i_].text != text) {
            error("expected '" + std::string(text) + "'" + (at_end() ? "" : " but found '" + toks_[i_].text + "'"));
        }
        ++i_;
    }

    bool accept(std::string_view text) {
        if (!at_end() && toks_[i_].text == text) {
            ++i_;
            return true;
        }
        return false;
    }

    void finish() {
        if (!at_end()) error("unexpected '" + toks_[i_].text + "'");
    }

    std::size_t number() {
        const SourcePos at = pos();
        const Token& t = take("a number");
        if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
            t.text.size() > 9) {
            throw ParseError(at, "expected a number but found '" + t.text + "'");
        }
        return std::stoul(t.text);
    }

    BinWord word() {
        const SourcePos at = pos();
        const Token& t = take("a binary word");
        if (t.text == "ε" || t.text == "eps") return BinWord();
        if (t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), [](char c) { return c == '0' || c == '1'; })) {
            throw ParseError(at, "expected a binary word but found '" + t.text + "'");
        }
        return BinWord::parse(t.text);
    }

    std::string name_ref() {
        const SourcePos at = pos();
        const Token& t = take("a tree name");
        if (!is_identifier(t.text) || kReserved.count(t.text)) {
            throw ParseError(at, "expected a tree name but found '" + t.text + "'");
        }
        if (!known_.count(t.text)) throw ParseError(at, "unknown name '" + t.text + "'");
        return t.text;
    }

    std::vector<BinWord> word_list(std::string_view close) {
        std::vector<BinWord> out;
        while (!at_end() && toks_[i_].text != close) out.push_back(word());
        expect(close);
        return out;
    }

    std::vector<SilverEntry> entry_list() {
        std::vector<SilverEntry> out;
        expect("[");
        while (!at_end() && toks_[i_].text != "]") {
            const SourcePos at = pos();
            const std::string& t = take("an entry").text;
            if (t == "-1") {
                out.push_back(-1);
            } else if (t == "0") {
                out.push_back(0);
            } else if (t == "1") {
                out.push_back(1);
            } else {
                throw ParseError(at, "Silver entries are -1, 0 or 1, not '" + t + "'");
            }
        }
        expect("]");
        return out;
    }

    TreeExpr expr() {
        TreeExpr e;
        e.pos = pos();
        const Token* t = peek();
        if (!t) error("expected a tree expression");
        if (accept("full")) {
            e.kind = TreeExpr::Kind::Full;
        } else if (accept("words")) {
            e.kind = TreeExpr::Kind::Words;
            expect("{");
            e.words = word_list("}");
            if (e.words.empty()) throw ParseError(e.pos, "words{} needs at least one word");
            for (const BinWord& w : e.words) {
                if (w.size() != e.words.front().size()) {
                    throw ParseError(e.pos, "words{} entries must share one length");
                }
            }
        } else if (accept("blocks")) {
            e.kind = TreeExpr::Kind::Blocks;
            expect("(");
            e.k = number();
            expect(")");
            expect("{");
            e.words = word_list("}");
            if (e.k == 0) throw ParseError(e.pos, "block length must be at least 1");
            if (e.words.empty()) throw ParseError(e.pos, "blocks{} needs at least one block");
            for (const BinWord& w : e.words) {
                if (w.size() != e.k) {
                    throw ParseError(e.pos, "block " + w.to_string() + " does not have length " + std::to_string(e.k));
                }
            }
        } else if (accept("silver")) {
            e.kind = TreeExpr::Kind::Silver;
            e.prefix = entry_list();
            expect("repeat");
            e.period = entry_list();
            if (e.period.empty()) throw ParseError(e.pos, "Silver period must be nonempty");
        } else if (accept("product")) {
            e.kind = TreeExpr::Kind::Product;
            expect("(");
            e.args.push_back(expr());
            expect(",");
            e.args.push_back(expr());
            expect(")");
        } else if (accept("subtree")) {
            e.kind = TreeExpr::Kind::Subtree;
            expect("(");
            e.args.push_back(expr());
            expect(",");
            e.root = word();
            expect(")");
        } else {
            e.kind = TreeExpr::Kind::Name;
            e.name = name_ref();
        }
        return e;
    }

    std::optional<std::size_t> optional_depth() {
        if (accept("depth")) return number();
        return std::nullopt;
    }

    Query query() {
        Query q;
        q.pos = pos();
        const SourcePos at = pos();
        const std::string kind = take("a query kind").text;
        if (kind == "classify") {
            q.kind = QueryKind::Classify;
            q.names.push_back(name_ref());
            q.depth = optional_depth();
        } else if (kind == "measure") {
            q.kind = QueryKind::Measure;
            q.names.push_back(name_ref());
            expect("cylinder");
            q.word = word();
        } else if (kind == "trace" || kind == "trace-exact" || kind == "lemma1") {
            q.kind = kind == "trace" ? QueryKind::Trace : kind == "trace-exact" ? QueryKind::TraceExact : QueryKind::Lemma1;
            q.names.push_back(name_ref());
            expect("in");
            q.names.push_back(name_ref());
            if (q.kind == QueryKind::Trace) q.depth = optional_depth();
            if (q.kind == QueryKind::Lemma1) {
                expect("k");
                q.k = number();
                expect("rounds");
                q.count = number();
            }
        } else if (kind == "table1") {
            q.kind = QueryKind::Table1;
        } else if (kind == "table2") {
            q.kind = QueryKind::Table2;
        } else if (kind == "phi") {
            q.kind = QueryKind::Phi;
            q.word = word();
        } else if (kind == "lusin") {
            q.kind = QueryKind::Lusin;
            expect("stages");
            q.count = number();
        } else if (kind == "product-check") {
            q.kind = QueryKind::ProductCheck;
            q.names.push_back(name_ref());
            q.names.push_back(name_ref());
            q.depth = optional_depth();
        } else {
            throw ParseError(at, "unknown query '" + kind + "'");
        }
        finish();
        return q;
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;
    std::size_t line_;
    std::size_t end_column_;
    const std::set<std::string, std::less<>>& known_;
};

std::set<std::string, std::less<>> builtin_names() {
    std::set<std::string, std::less<>> s;
    for (std::string_view b : kBuiltins) s.emplace(b);
    return s;
}

}  // namespace

Script parse(std::string_view text) {
    Script script;
    std::set<std::string, std::less<>> known = builtin_names();
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('\n', start), text.size());
        const std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        std::vector<Token> toks = tokenize(line);
        if (toks.empty()) {
            if (end == text.size()) break;
            continue;
        }
        LineParser p(std::move(toks), line_no, line.size(), known);
        if (p.accept("tree")) {
            Declaration d;
            d.pos = p.pos();
            const Token& t = p.take("a tree name");
            if (!is_identifier(t.text) || kReserved.count(t.text)) {
                throw ParseError(d.pos, "invalid tree name '" + t.text + "'");
            }
            if (known.count(t.text)) throw ParseError(d.pos, "duplicate name '" + t.text + "'");
            d.name = t.text;
            p.expect("=");
            d.expr = p.expr();
            p.finish();
            known.insert(d.name);
            script.declarations.push_back(std::move(d));
        } else if (p.accept("query")) {
            script.queries.push_back(p.query());
        } else {
            p.error("expected 'tree' or 'query'");
        }
        if (end == text.size()) break;
    }
    return script;
}

TreeExpr parse_tree_expr(std::string_view text) {
    static const std::set<std::string, std::less<>> known = builtin_names();
    LineParser p(tokenize(text), 1, text.size(), known);
    TreeExpr e = p.expr();
    p.finish();
    return e;
}

namespace {

std::string join_words(const std::vector<BinWord>& words) {
    std::string s;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) s += ' ';
        s += words[i].to_string();
    }
    return s;
}

std::string join_entries(const std::vector<SilverEntry>& entries) {
    std::string s;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(static_cast<int>(entries[i]));
    }
    return s;
}

}  // namespace

std::string pretty(const TreeExpr& e) {
    switch (e.kind) {
        case TreeExpr::Kind::Name: return e.name;
        case TreeExpr::Kind::Full: return "full";
        case TreeExpr::Kind::Words: return "words{" + join_words(e.words) + "}";
        case TreeExpr::Kind::Blocks:
            return "blocks(" + std::to_string(e.k) + "){" + join_words(e.words) + "}";
        case TreeExpr::Kind::Silver:
            return "silver[" + join_entries(e.prefix) + "]repeat[" + join_entries(e.period) + "]";
        case TreeExpr::Kind::Product: return "product(" + pretty(e.args[0]) + "," + pretty(e.args[1]) + ")";
        case TreeExpr::Kind::Subtree: return "subtree(" + pretty(e.args[0]) + "," + e.root.to_string() + ")";
    }
    return {};
}

std::string pretty(const Query& q) {
    auto depth = [&] { return q.depth ? " depth " + std::to_string(*q.depth) : std::string(); };
    switch (q.kind) {
        case QueryKind::Classify: return "classify " + q.names[0] + depth();
        case QueryKind::Measure: return "measure " + q.names[0] + " cylinder " + q.word.to_string();
        case QueryKind::Trace: return "trace " + q.names[0] + " in " + q.names[1] + depth();
        case QueryKind::TraceExact: return "trace-exact " + q.names[0] + " in " + q.names[1];
        case QueryKind::Lemma1:
            return "lemma1 " + q.names[0] + " in " + q.names[1] + " k " + std::to_string(q.k) + " rounds " +
                   std::to_string(q.count);
        case QueryKind::Table1: return "table1";
        case QueryKind::Table2: return "table2";
        case QueryKind::Phi: return "phi " + q.word.to_string();
        case QueryKind::Lusin: return "lusin stages " + std::to_string(q.count);
        case QueryKind::ProductCheck: return "product-check " + q.names[0] + " " + q.names[1] + depth();
    }
    return {};
}

std::string pretty(const Script& s) {
    std::string out;
    for (const Declaration& d : s.declarations) out += "tree " + d.name + " = " + pretty(d.expr) + "\n";
    for (const Query& q : s.queries) out += "query " + pretty(q) + "\n";
    return out;
}

Tree build(const TreeExpr& e, const std::map<std::string, Tree>& env) {
    switch (e.kind) {
        case TreeExpr::Kind::Name: {
            if (auto it = env.find(e.name); it != env.end()) return it->second;
            if (auto n = named_from_string(e.name)) return named_tree(*n);
            fail(ErrorKind::InvalidArgument, "unknown tree '" + e.name + "'");
        }
        case TreeExpr::Kind::Full: return Tree::full();
        case TreeExpr::Kind::Words: return Tree::explicit_tree(e.words.front().size(), e.words);
        case TreeExpr::Kind::Blocks: return Tree::blocks(e.k, e.words);
        case TreeExpr::Kind::Silver: return Tree::silver(e.prefix, e.period);
        case TreeExpr::Kind::Product: return Tree::product(build(e.args[0], env), build(e.args[1], env));
        case TreeExpr::Kind::Subtree: return Tree::subtree(build(e.args[0], env), e.root);
    }
    fail(ErrorKind::InvalidArgument, "bad tree expression");
}

}  // namespace pnull::dsl
