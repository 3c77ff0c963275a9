#include "pnull/automaton.hpp"

#include <deque>
#include <string>

#include "pnull/error.hpp"

namespace pnull {

void Automaton::past_horizon() {
    fail(ErrorKind::BeyondHorizon, "query reaches past the presentation horizon");
}

StateId Automaton::run(std::span<const Bit> w) const {
    StateId s = start;
    for (Bit b : w) {
        s = next(s, b);
        if (s == kNoState) return kNoState;
    }
    return s;
}

Automaton::Reach Automaton::reachable() const {
    Reach r;
    r.access.assign(states.size(), std::nullopt);
    r.depth.assign(states.size(), 0);
    std::deque<StateId> queue{start};
    r.access[static_cast<std::size_t>(start)] = BinWord();
    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        r.order.push_back(s);
        const State& st = states[static_cast<std::size_t>(s)];
        if (st.horizon) continue;
        for (Bit b = 0; b < 2; ++b) {
            const StateId t = st.next[b];
            if (t == kNoState || r.access[static_cast<std::size_t>(t)]) continue;
            r.access[static_cast<std::size_t>(t)] = r.access[static_cast<std::size_t>(s)]->append(b);
            r.depth[static_cast<std::size_t>(t)] = r.depth[static_cast<std::size_t>(s)] + 1;
            queue.push_back(t);
        }
    }
    return r;
}

std::vector<bool> Automaton::reaches_split() const {
    // Backward fixpoint over the reversed transition relation.
    std::vector<std::vector<StateId>> preds(states.size());
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (states[s].horizon) continue;
        for (StateId t : states[s].next) {
            if (t != kNoState) preds[static_cast<std::size_t>(t)].push_back(static_cast<StateId>(s));
        }
    }
    std::vector<bool> good(states.size(), false);
    std::deque<StateId> queue;
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (!states[s].horizon && states[s].next[0] != kNoState && states[s].next[1] != kNoState) {
            good[s] = true;
            queue.push_back(static_cast<StateId>(s));
        }
    }
    while (!queue.empty()) {
        const StateId t = queue.front();
        queue.pop_front();
        for (StateId p : preds[static_cast<std::size_t>(t)]) {
            if (!good[static_cast<std::size_t>(p)]) {
                good[static_cast<std::size_t>(p)] = true;
                queue.push_back(p);
            }
        }
    }
    return good;
}

std::optional<std::size_t> Automaton::horizon_depth() const {
    const Reach r = reachable();
    std::optional<std::size_t> best;
    for (StateId s : r.order) {
        if (!is_horizon(s)) continue;
        const std::size_t d = r.depth[static_cast<std::size_t>(s)];
        if (!best || d < *best) best = d;
    }
    return best;
}

}  // namespace pnull
