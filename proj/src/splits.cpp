#include "pnull/splits.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "pnull/error.hpp"

namespace pnull {

namespace {

void require_perfect(const Tree& tree) {
    if (!tree.report().perfect) {
        fail(ErrorKind::InvalidPresentation, "tree is not perfect: " + tree.report().summary());
    }
}

struct Cursor {
    BinWord word;
    StateId state;
};

// Follows forced bits from `c` until a branching point. A perfect
// finite-state tree reaches one within |states| steps.
Cursor descend_to_split(const Automaton& a, Cursor c) {
    std::size_t guard = 0;
    while (!a.splits(c.state)) {
        const std::uint8_t mask = a.child_mask(c.state);
        if (mask == 0) fail(ErrorKind::InvalidPresentation, "dead end at " + c.word.to_string());
        const Bit b = mask == 1 ? 0 : 1;
        c.word = c.word.append(b);
        c.state = a.next(c.state, b);
        if (++guard > a.size()) {
            fail(ErrorKind::Integrity, "no branching point below " + c.word.to_string());
        }
    }
    return c;
}

}  // namespace

SplitProfile split_profile(const Tree& tree, std::size_t levels) {
    require_perfect(tree);
    const Automaton& a = tree.automaton();
    SplitProfile profile;
    if (!tree.report().exact) profile.horizon = tree.report().horizon;
    std::vector<Cursor> starts{{BinWord(), a.start}};
    for (std::size_t i = 0; i < levels; ++i) {
        std::vector<BinWord> points;
        std::vector<Cursor> next_starts;
        points.reserve(starts.size());
        next_starts.reserve(2 * starts.size());
        std::size_t lo = SIZE_MAX, hi = 0;
        for (const Cursor& c : starts) {
            const Cursor split = descend_to_split(a, c);
            lo = std::min(lo, split.word.size());
            hi = std::max(hi, split.word.size());
            for (Bit b = 0; b < 2; ++b) {
                next_starts.push_back({split.word.append(b), a.next(split.state, b)});
            }
            points.push_back(split.word);
        }
        profile.split_points.push_back(std::move(points));
        profile.min_length.push_back(lo);
        profile.max_length.push_back(hi);
        starts = std::move(next_starts);
    }
    return profile;
}

std::size_t level(const Tree& tree, const BinWord& w) {
    const Automaton& a = tree.automaton();
    StateId s = a.start;
    std::size_t count = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (a.splits(s)) ++count;
        s = a.next(s, w[i]);
        if (s == kNoState) fail(ErrorKind::NotANode, w.to_string() + " is not a node");
    }
    return count;
}

BinWord canon_embed(const Tree& tree, const BinWord& w) {
    require_perfect(tree);
    const Automaton& a = tree.automaton();
    Cursor c = descend_to_split(a, {BinWord(), a.start});
    for (Bit b : w.bits()) {
        c = descend_to_split(a, {c.word.append(b), a.next(c.state, b)});
    }
    return c.word;
}

namespace {

// Walk over depths: the set of (state, level relative to the shallowest
// level present) at each length, plus the last split level seen. In a
// balanced tree the level spread at one length is at most 1 and the last
// split level is base-1 or base, so the configuration space is finite.
struct Config {
    std::vector<std::pair<StateId, int>> nodes;  // sorted
    int last_split = kNoSplit;                   // relative to base
    bool balanced_alive = true;

    static constexpr int kNoSplit = 99;

    friend bool operator<(const Config& a, const Config& b) {
        return std::tie(a.nodes, a.last_split, a.balanced_alive) <
               std::tie(b.nodes, b.last_split, b.balanced_alive);
    }
};

constexpr std::size_t kClassifyStepCap = 1 << 14;

}  // namespace

Classification classify(const Tree& tree, std::size_t depth) {
    require_perfect(tree);
    const Automaton& a = tree.automaton();
    Classification out;
    out.uniform = true;
    out.silver = true;
    out.balanced = true;

    Config cur;
    cur.nodes = {{a.start, 0}};
    std::map<Config, std::size_t> seen;
    const std::size_t limit = tree.report().exact ? std::max(depth, kClassifyStepCap) : depth;

    for (std::size_t n = 0;; ++n) {
        if (auto it = seen.find(cur); it != seen.end()) {
            out.exact = true;
            out.period_start = it->second;
            out.period = n - it->second;
            out.verified_depth = n;
            break;
        }
        const bool at_horizon = std::any_of(cur.nodes.begin(), cur.nodes.end(),
                                            [&](const auto& p) { return a.is_horizon(p.first); });
        if (at_horizon || n >= limit) {
            out.exact = false;
            out.verified_depth = n;
            break;
        }
        seen.emplace(cur, n);

        // Per-length checks.
        bool any_split = false, all_split = true, same_mask = true;
        const std::uint8_t mask0 = a.child_mask(cur.nodes.front().first);
        std::optional<int> split_level;
        bool split_levels_agree = true;
        for (const auto& [q, rel] : cur.nodes) {
            const std::uint8_t m = a.child_mask(q);
            const bool sp = m == 3;
            any_split |= sp;
            all_split &= sp;
            same_mask &= m == mask0;
            if (sp) {
                if (split_level && *split_level != rel) split_levels_agree = false;
                if (!split_level) split_level = rel;
            }
        }
        const bool uniform_here = all_split || !any_split;
        out.uniform &= uniform_here;
        out.silver &= uniform_here && same_mask;
        if (all_split) out.splitting_lengths.push_back(n);

        Config next;
        next.balanced_alive = cur.balanced_alive;
        if (cur.balanced_alive && split_level) {
            if (!split_levels_agree) next.balanced_alive = false;
            if (cur.last_split != Config::kNoSplit && *split_level < cur.last_split) {
                next.balanced_alive = false;
            }
        }

        // Successor length.
        std::vector<std::pair<StateId, int>> succ;
        for (const auto& [q, rel] : cur.nodes) {
            const auto& st = a.states[static_cast<std::size_t>(q)];
            const int bump = a.splits(q) ? 1 : 0;
            for (StateId t : st.next) {
                if (t != kNoState) succ.emplace_back(t, next.balanced_alive ? rel + bump : 0);
            }
        }
        int base = 0;
        if (next.balanced_alive) {
            base = std::min_element(succ.begin(), succ.end(), [](const auto& x, const auto& y) {
                       return x.second < y.second;
                   })->second;
            for (auto& p : succ) p.second -= base;
            int last = cur.last_split;
            if (split_level) {
                last = *split_level;
            }
            if (last != Config::kNoSplit) {
                last -= base;
                if (last < -1 || last > 0) next.balanced_alive = false;
            }
            const bool spread_ok = std::all_of(succ.begin(), succ.end(),
                                               [](const auto& p) { return p.second <= 1; });
            if (!spread_ok) next.balanced_alive = false;
            next.last_split = last;
        }
        if (!next.balanced_alive) {
            for (auto& p : succ) p.second = 0;
            next.last_split = Config::kNoSplit;
        }
        std::sort(succ.begin(), succ.end());
        succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
        next.nodes = std::move(succ);
        cur = std::move(next);
    }
    out.balanced = cur.balanced_alive;
    // Every configuration in the cycle was checked, so a verdict that
    // survived the walk holds at all depths.
    if (out.silver && !out.uniform) out.silver = false;
    return out;
}

std::string Classification::summary() const {
    std::ostringstream os;
    os << "balanced=" << (balanced ? "yes" : "no") << " uniform=" << (uniform ? "yes" : "no")
       << " silver=" << (silver ? "yes" : "no") << " exactness="
       << (exact ? std::string("exact") : "up-to-depth(" + std::to_string(verified_depth) + ")");
    return os.str();
}

}  // namespace pnull
