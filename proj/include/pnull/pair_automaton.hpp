#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pnull/automaton.hpp"

namespace pnull {

/// Synchronous product of a host automaton P with a test automaton X,
/// reading the same bits. Transitions follow P; the X component becomes
/// kNoState once the word leaves T_X (kept only when `keep_exited`).
struct PairAutomaton {
    struct Pair {
        StateId p;
        StateId x;
        friend bool operator<(const Pair& a, const Pair& b) {
            return a.p != b.p ? a.p < b.p : a.x < b.x;
        }
        friend bool operator==(const Pair&, const Pair&) = default;
    };

    std::vector<Pair> pairs;
    /// Per pair and bit: successor pair index, or -1 (no P-child, or the
    /// child leaves T_X when exited pairs are not kept).
    std::vector<std::array<std::int32_t, 2>> next;
    /// Per pair: P splits here.
    std::vector<bool> p_splits;
    /// Per pair: P has a child on this bit (independent of X).
    std::vector<std::uint8_t> p_mask;
    /// Per pair: successors unknown because P or X is at a horizon.
    std::vector<bool> horizon;

    std::size_t size() const { return pairs.size(); }
    bool exited(std::int32_t i) const { return pairs[static_cast<std::size_t>(i)].x == kNoState; }

    static PairAutomaton build(const Automaton& p, const Automaton& x, bool keep_exited);
};

}  // namespace pnull
