#include "pnull/tree.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "pnull/error.hpp"

namespace pnull {

struct Tree::Data {
    TreeSpec spec;
    Automaton automaton;
    ValidationReport report;
};

namespace {

std::vector<BinWord> sorted_unique(std::vector<BinWord> words) {
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    return words;
}

// True if `w` is a prefix of some word in the sorted list.
bool prefix_of_any(const std::vector<BinWord>& sorted, const BinWord& w) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), w);
    return it != sorted.end() && w.is_prefix_of(*it);
}

// Trie over the words; states at full length either wrap to the root
// (block automata) or become horizon states (explicit truncations).
Automaton compile_trie(const std::vector<BinWord>& words, std::size_t length, bool wrap) {
    Automaton a;
    a.states.emplace_back();
    if (length == 0) {
        a.states[0].horizon = !wrap;
        return a;
    }
    for (const BinWord& w : words) {
        StateId s = 0;
        for (std::size_t i = 0; i < length; ++i) {
            const Bit b = w[i];
            const bool last = i + 1 == length;
            StateId& slot = a.states[static_cast<std::size_t>(s)].next[b];
            if (last && wrap) {
                slot = 0;
                break;
            }
            if (slot == kNoState) {
                slot = static_cast<StateId>(a.states.size());
                a.states.emplace_back();
                if (last) a.states.back().horizon = true;
            }
            s = a.states[static_cast<std::size_t>(s)].next[b];
        }
    }
    return a;
}

Automaton compile_silver(const SilverSpec& spec) {
    Automaton a;
    const std::size_t n = spec.prefix.size() + spec.period.size();
    a.states.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const SilverEntry e = spec.entry(i);
        const auto succ = static_cast<StateId>(i + 1 < n ? i + 1 : spec.prefix.size());
        if (e == -1 || e == 0) a.states[i].next[0] = succ;
        if (e == -1 || e == 1) a.states[i].next[1] = succ;
    }
    return a;
}

Automaton compile_product(const Automaton& left, const Automaton& right) {
    // Product states (left state, right state, parity); even depths read
    // into the left factor.
    using Key = std::tuple<StateId, StateId, int>;
    std::map<Key, StateId> index;
    std::vector<Key> keys;
    Automaton a;
    auto intern = [&](const Key& k) {
        auto [it, inserted] = index.emplace(k, static_cast<StateId>(keys.size()));
        if (inserted) {
            keys.push_back(k);
            a.states.emplace_back();
        }
        return it->second;
    };
    a.start = intern({left.start, right.start, 0});
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto [l, r, parity] = keys[i];
        const Automaton& reader = parity == 0 ? left : right;
        const StateId cur = parity == 0 ? l : r;
        if (reader.is_horizon(cur)) {
            a.states[i].horizon = true;
            continue;
        }
        for (Bit b = 0; b < 2; ++b) {
            const StateId t = reader.states[static_cast<std::size_t>(cur)].next[b];
            if (t == kNoState) continue;
            const Key nk = parity == 0 ? Key{t, r, 1} : Key{l, t, 0};
            const StateId id = intern(nk);
            a.states[i].next[b] = id;
        }
    }
    return a;
}

Automaton compile_subtree(const Automaton& base, const BinWord& root) {
    // A forced chain spelling `root`, then the base automaton from there.
    Automaton a;
    const std::size_t chain = root.size();
    a.states.resize(chain);
    StateId cur = base.start;
    for (std::size_t i = 0; i < chain; ++i) {
        if (base.is_horizon(cur)) {
            fail(ErrorKind::InvalidPresentation, "subtree root reaches past the base horizon");
        }
        const StateId t = base.states[static_cast<std::size_t>(cur)].next[root[i]];
        if (t == kNoState) {
            fail(ErrorKind::InvalidPresentation, "subtree root " + root.to_string() +
                                                     " is not a node of the base tree");
        }
        cur = t;
    }
    const auto offset = static_cast<StateId>(chain);
    for (const Automaton::State& st : base.states) {
        Automaton::State copy = st;
        for (StateId& t : copy.next) {
            if (t != kNoState) t += offset;
        }
        a.states.push_back(copy);
    }
    for (std::size_t i = 0; i < chain; ++i) {
        a.states[i].next[root[i]] = i + 1 < chain ? static_cast<StateId>(i + 1) : cur + offset;
    }
    a.start = chain == 0 ? base.start + offset : 0;
    return a;
}

ValidationReport analyse(const Automaton& a) {
    ValidationReport rep;
    const Automaton::Reach reach = a.reachable();
    const std::vector<bool> good = a.reaches_split();
    rep.pruned = true;
    rep.exact = true;
    std::optional<std::size_t> first_bad;
    for (StateId s : reach.order) {
        const auto idx = static_cast<std::size_t>(s);
        const std::size_t d = reach.depth[idx];
        if (a.is_horizon(s)) {
            rep.exact = false;
            if (!rep.horizon || d < *rep.horizon) rep.horizon = d;
            continue;
        }
        const auto& next = a.states[idx].next;
        if (next[0] == kNoState && next[1] == kNoState) {
            rep.pruned = false;
            rep.witnesses.push_back(*reach.access[idx]);
        }
        if (!good[idx]) {
            if (!first_bad || d < *first_bad) first_bad = d;
            if (rep.witnesses.size() < 8) rep.witnesses.push_back(*reach.access[idx]);
        }
    }
    std::sort(rep.witnesses.begin(), rep.witnesses.end());
    rep.witnesses.erase(std::unique(rep.witnesses.begin(), rep.witnesses.end()),
                        rep.witnesses.end());
    if (rep.exact) {
        rep.perfect = rep.pruned && !first_bad;
    } else {
        // Nodes close to the horizon cannot show a split yet; the verdict is
        // qualified by the depth up to which every node has one.
        if (first_bad && *first_bad == 0) {
            rep.perfect = false;
        } else {
            rep.perfect = rep.pruned;
            rep.perfect_up_to = first_bad ? *first_bad - 1 : *rep.horizon;
        }
    }
    return rep;
}

std::string render_silver(const std::vector<SilverEntry>& entries) {
    std::string s;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(static_cast<int>(entries[i]));
    }
    return s;
}

std::string render_words(const std::vector<BinWord>& words) {
    std::string s;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) s += ' ';
        s += words[i].to_string();
    }
    return s;
}

}  // namespace

std::string ValidationReport::summary() const {
    std::ostringstream os;
    os << (pruned ? "pruned" : "not pruned") << ", ";
    if (exact) {
        os << (perfect ? "perfect" : "not perfect");
    } else if (perfect) {
        os << "perfect up to depth " << *perfect_up_to;
    } else {
        os << "not perfect up to depth " << (horizon ? *horizon : 0);
    }
    return os.str();
}

Tree Tree::full() {
    auto d = std::make_shared<Data>();
    d->spec.value = FullSpec{};
    d->automaton.states.resize(1);
    d->automaton.states[0].next = {0, 0};
    d->report = analyse(d->automaton);
    return Tree(std::move(d));
}

Tree Tree::explicit_tree(std::size_t depth, std::vector<BinWord> frontier) {
    if (frontier.empty()) fail(ErrorKind::InvalidPresentation, "explicit tree with empty frontier");
    for (const BinWord& w : frontier) {
        if (w.size() != depth) {
            fail(ErrorKind::InvalidPresentation, "frontier word " + w.to_string() +
                                                     " does not have depth " + std::to_string(depth));
        }
    }
    auto d = std::make_shared<Data>();
    ExplicitSpec spec{depth, sorted_unique(std::move(frontier))};
    d->automaton = compile_trie(spec.frontier, depth, false);
    d->spec.value = std::move(spec);
    d->report = analyse(d->automaton);
    return Tree(std::move(d));
}

Tree Tree::blocks(std::size_t k, std::vector<BinWord> blocks) {
    if (k == 0) fail(ErrorKind::InvalidPresentation, "block length must be at least 1");
    if (blocks.empty()) fail(ErrorKind::InvalidPresentation, "block set must be nonempty");
    for (const BinWord& w : blocks) {
        if (w.size() != k) {
            fail(ErrorKind::InvalidPresentation, "block " + w.to_string() + " does not have length " +
                                                     std::to_string(k));
        }
    }
    auto d = std::make_shared<Data>();
    BlockSpec spec{k, sorted_unique(std::move(blocks))};
    d->automaton = compile_trie(spec.blocks, k, true);
    d->spec.value = std::move(spec);
    d->report = analyse(d->automaton);
    return Tree(std::move(d));
}

Tree Tree::silver(std::vector<SilverEntry> prefix, std::vector<SilverEntry> period) {
    auto check = [](const std::vector<SilverEntry>& v) {
        for (SilverEntry e : v) {
            if (e < -1 || e > 1) fail(ErrorKind::InvalidPresentation, "Silver entries must be -1, 0 or 1");
        }
    };
    check(prefix);
    check(period);
    if (std::find(period.begin(), period.end(), SilverEntry{-1}) == period.end()) {
        fail(ErrorKind::InvalidPresentation, "Silver period must contain -1");
    }
    auto d = std::make_shared<Data>();
    SilverSpec spec{std::move(prefix), std::move(period)};
    d->automaton = compile_silver(spec);
    d->spec.value = std::move(spec);
    d->report = analyse(d->automaton);
    return Tree(std::move(d));
}

Tree Tree::product(const Tree& left, const Tree& right) {
    auto d = std::make_shared<Data>();
    d->automaton = compile_product(left.automaton(), right.automaton());
    d->spec.value = ProductSpec{left, right};
    d->report = analyse(d->automaton);
    return Tree(std::move(d));
}

Tree Tree::subtree(const Tree& base, const BinWord& root) {
    auto d = std::make_shared<Data>();
    d->automaton = compile_subtree(base.automaton(), root);
    d->spec.value = SubtreeSpec{base, root};
    d->report = analyse(d->automaton);
    return Tree(std::move(d));
}

TreeKind Tree::kind() const { return static_cast<TreeKind>(data_->spec.value.index()); }
const TreeSpec& Tree::spec() const { return data_->spec; }
const Automaton& Tree::automaton() const { return data_->automaton; }
const ValidationReport& Tree::report() const { return data_->report; }

std::string Tree::describe() const {
    struct Visitor {
        std::string operator()(const FullSpec&) const { return "full"; }
        std::string operator()(const ExplicitSpec& s) const {
            return "words{" + render_words(s.frontier) + "}";
        }
        std::string operator()(const BlockSpec& s) const {
            return "blocks(" + std::to_string(s.k) + "){" + render_words(s.blocks) + "}";
        }
        std::string operator()(const SilverSpec& s) const {
            return "silver[" + render_silver(s.prefix) + "]repeat[" + render_silver(s.period) + "]";
        }
        std::string operator()(const ProductSpec& s) const {
            return "product(" + s.left.describe() + "," + s.right.describe() + ")";
        }
        std::string operator()(const SubtreeSpec& s) const {
            return "subtree(" + s.base.describe() + "," + s.root.to_string() + ")";
        }
    };
    return std::visit(Visitor{}, data_->spec.value);
}

bool contains(const Tree& tree, const BinWord& w) {
    struct Visitor {
        const BinWord& w;
        bool operator()(const FullSpec&) const { return true; }
        bool operator()(const ExplicitSpec& s) const {
            if (w.size() > s.depth) {
                fail(ErrorKind::BeyondHorizon, "word " + w.to_string() + " is beyond the explicit depth " +
                                                   std::to_string(s.depth));
            }
            return prefix_of_any(s.frontier, w);
        }
        bool operator()(const BlockSpec& s) const {
            const std::size_t full_blocks = w.size() / s.k;
            for (std::size_t b = 0; b < full_blocks; ++b) {
                const BinWord block = subword(w, b * s.k, b * s.k + s.k - 1);
                if (!std::binary_search(s.blocks.begin(), s.blocks.end(), block)) return false;
            }
            const std::size_t rest = w.size() - full_blocks * s.k;
            if (rest == 0) return true;
            return prefix_of_any(s.blocks, subword(w, full_blocks * s.k, w.size() - 1));
        }
        bool operator()(const SilverSpec& s) const {
            for (std::size_t i = 0; i < w.size(); ++i) {
                const SilverEntry e = s.entry(i);
                if (e != -1 && w[i] != static_cast<Bit>(e)) return false;
            }
            return true;
        }
        bool operator()(const ProductSpec& s) const {
            auto [even, odd] = deinterleave(w);
            return contains(s.left, even) && contains(s.right, odd);
        }
        bool operator()(const SubtreeSpec& s) const {
            return w.comparable_with(s.root) && contains(s.base, w);
        }
    };
    return std::visit(Visitor{w}, tree.spec().value);
}

std::uint8_t children(const Tree& tree, const BinWord& w) {
    if (!contains(tree, w)) fail(ErrorKind::NotANode, w.to_string() + " is not a node");
    struct Visitor {
        const Tree& tree;
        const BinWord& w;
        std::uint8_t by_membership() const {
            std::uint8_t mask = 0;
            if (contains(tree, w.append(0))) mask |= 1;
            if (contains(tree, w.append(1))) mask |= 2;
            return mask;
        }
        std::uint8_t operator()(const FullSpec&) const { return 3; }
        std::uint8_t operator()(const ExplicitSpec& s) const {
            if (w.size() >= s.depth) {
                fail(ErrorKind::BeyondHorizon, "children of " + w.to_string() +
                                                   " lie beyond the explicit depth");
            }
            return by_membership();
        }
        std::uint8_t operator()(const BlockSpec&) const { return by_membership(); }
        std::uint8_t operator()(const SilverSpec& s) const {
            const SilverEntry e = s.entry(w.size());
            return e == -1 ? 3 : static_cast<std::uint8_t>(e == 0 ? 1 : 2);
        }
        std::uint8_t operator()(const ProductSpec& s) const {
            auto [even, odd] = deinterleave(w);
            return w.size() % 2 == 0 ? children(s.left, even) : children(s.right, odd);
        }
        std::uint8_t operator()(const SubtreeSpec& s) const {
            if (w.size() < s.root.size()) return static_cast<std::uint8_t>(s.root[w.size()] == 0 ? 1 : 2);
            return children(s.base, w);
        }
    };
    return std::visit(Visitor{tree, w}, tree.spec().value);
}

ValidationReport validate(const Tree& tree) { return tree.report(); }

Tree product(const Tree& left, const Tree& right) { return Tree::product(left, right); }

namespace {

// Entries b_n = a_{2n + parity} as an eventually periodic sequence.
std::pair<std::vector<SilverEntry>, std::vector<SilverEntry>> silver_component(const SilverSpec& s,
                                                                               std::size_t parity) {
    // From n0 on, 2n + parity lies past the prefix and shifting n by
    // |period| shifts the index by 2|period|, a multiple of the period.
    const std::size_t n0 = (s.prefix.size() + 1) / 2;
    std::vector<SilverEntry> prefix, period;
    for (std::size_t n = 0; n < n0; ++n) prefix.push_back(s.entry(2 * n + parity));
    for (std::size_t n = n0; n < n0 + s.period.size(); ++n) period.push_back(s.entry(2 * n + parity));
    return {prefix, period};
}

Tree silver_or_finite(std::vector<SilverEntry> prefix, std::vector<SilverEntry> period,
                      std::size_t finite_horizon, bool& finite) {
    auto all_split = [](const std::vector<SilverEntry>& v) {
        return std::all_of(v.begin(), v.end(), [](SilverEntry e) { return e == -1; });
    };
    finite = std::find(period.begin(), period.end(), SilverEntry{-1}) == period.end();
    if (!finite) {
        if (all_split(prefix) && all_split(period)) return Tree::full();
        return Tree::silver(std::move(prefix), std::move(period));
    }
    // Finitely many -1 entries: enumerate the finite set's truncations.
    SilverSpec spec{std::move(prefix), std::move(period)};
    std::vector<BinWord> frontier{BinWord()};
    for (std::size_t n = 0; n < finite_horizon; ++n) {
        const SilverEntry e = spec.entry(n);
        std::vector<BinWord> next;
        next.reserve(frontier.size() * (e == -1 ? 2 : 1));
        for (const BinWord& w : frontier) {
            if (e == -1 || e == 0) next.push_back(w.append(0));
            if (e == -1 || e == 1) next.push_back(w.append(1));
        }
        frontier = std::move(next);
    }
    return Tree::explicit_tree(finite_horizon, std::move(frontier));
}

}  // namespace

SilverSplit silver_split(const Tree& silver, std::size_t finite_horizon) {
    const auto* spec = std::get_if<SilverSpec>(&silver.spec().value);
    if (!spec) fail(ErrorKind::InvalidArgument, "silver_split needs a Silver presentation");
    auto [ep, eq] = silver_component(*spec, 0);
    auto [op, oq] = silver_component(*spec, 1);
    bool even_finite = false, odd_finite = false;
    Tree even = silver_or_finite(std::move(ep), std::move(eq), finite_horizon, even_finite);
    Tree odd = silver_or_finite(std::move(op), std::move(oq), finite_horizon, odd_finite);
    return SilverSplit{even, odd, even_finite, odd_finite};
}

}  // namespace pnull
