#include "pnull/pair_automaton.hpp"

#include <map>

namespace pnull {

PairAutomaton PairAutomaton::build(const Automaton& p, const Automaton& x, bool keep_exited) {
    PairAutomaton g;
    std::map<Pair, std::int32_t> index;
    auto intern = [&](Pair key) {
        auto [it, inserted] = index.emplace(key, static_cast<std::int32_t>(g.pairs.size()));
        if (inserted) {
            g.pairs.push_back(key);
            g.next.push_back({-1, -1});
            g.p_splits.push_back(false);
            g.p_mask.push_back(0);
            g.horizon.push_back(false);
        }
        return it->second;
    };
    intern({p.start, x.start});
    for (std::size_t i = 0; i < g.pairs.size(); ++i) {
        const Pair cur = g.pairs[i];
        const bool x_alive = cur.x != kNoState;
        if (p.is_horizon(cur.p) || (x_alive && x.is_horizon(cur.x))) {
            g.horizon[i] = true;
            continue;
        }
        const std::uint8_t mask = p.child_mask(cur.p);
        g.p_mask[i] = mask;
        g.p_splits[i] = mask == 3;
        for (Bit b = 0; b < 2; ++b) {
            if (!(mask & (1U << b))) continue;
            const StateId pt = p.states[static_cast<std::size_t>(cur.p)].next[b];
            const StateId xt = x_alive ? x.states[static_cast<std::size_t>(cur.x)].next[b] : kNoState;
            if (xt == kNoState && !keep_exited) continue;
            const std::int32_t j = intern({pt, xt});
            g.next[i][b] = j;
        }
    }
    return g;
}

}  // namespace pnull
