#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pnull/word.hpp"

namespace pnull {

using StateId = std::int32_t;
inline constexpr StateId kNoState = -1;

/// Deterministic automaton over {0,1} whose accepted prefixes are the nodes
/// of a tree. Every presentation compiles to one of these. A horizon state
/// marks the end of a finite presentation: its successors are unknown and
/// asking for them fails with ErrorKind::BeyondHorizon.
struct Automaton {
    struct State {
        std::array<StateId, 2> next{kNoState, kNoState};
        bool horizon = false;
    };

    std::vector<State> states;
    StateId start = 0;

    std::size_t size() const { return states.size(); }
    bool is_horizon(StateId s) const { return states[static_cast<std::size_t>(s)].horizon; }

    /// Successor on `bit`, kNoState when the tree has no such child.
    StateId next(StateId s, Bit bit) const {
        const State& st = states[static_cast<std::size_t>(s)];
        if (st.horizon) past_horizon();
        return st.next[bit];
    }
    /// Bit mask of available children: bit 0 -> 1, bit 1 -> 2.
    std::uint8_t child_mask(StateId s) const {
        const State& st = states[static_cast<std::size_t>(s)];
        if (st.horizon) past_horizon();
        return static_cast<std::uint8_t>((st.next[0] != kNoState ? 1 : 0) | (st.next[1] != kNoState ? 2 : 0));
    }
    bool splits(StateId s) const { return child_mask(s) == 3; }

    /// State reached by reading `w` from the start, kNoState if `w` leaves
    /// the tree. Throws BeyondHorizon if the run needs a horizon state's
    /// successor.
    StateId run(std::span<const Bit> w) const;
    StateId run(const BinWord& w) const { return run(w.bits()); }

    /// Breadth-first order of reachable states plus one shortest access
    /// word for each (indexed by state id; empty optional if unreachable).
    struct Reach {
        std::vector<StateId> order;
        std::vector<std::optional<BinWord>> access;
        std::vector<std::size_t> depth;
    };
    Reach reachable() const;

    /// For each state: can a splitting state be reached (including itself)
    /// without stepping past a horizon state.
    std::vector<bool> reaches_split() const;

    /// Smallest depth at which a horizon state is reachable.
    std::optional<std::size_t> horizon_depth() const;

    /// Throws BeyondHorizon; kept out of line so the accessors stay small.
    [[noreturn]] static void past_horizon();
};

}  // namespace pnull
