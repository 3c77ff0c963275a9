#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pnull/tree.hpp"
#include "pnull/word.hpp"

namespace pnull {

/// Branching points per level: Split_i(P) with s_i(P) = min length and
/// S_i(P) = max length over the whole level (global reading).
struct SplitProfile {
    std::vector<std::vector<BinWord>> split_points;
    std::vector<std::size_t> min_length;
    std::vector<std::size_t> max_length;
    /// Depth to which the profile is exact; nullopt for infinite presentations.
    std::optional<std::size_t> horizon;

    std::size_t levels() const { return split_points.size(); }
};

SplitProfile split_profile(const Tree& tree, std::size_t levels);

/// l_P(w): the number of branching points that are proper prefixes of w.
std::size_t level(const Tree& tree, const BinWord& w);

struct Classification {
    bool balanced = false;
    bool uniform = false;
    bool silver = false;
    /// True when decided for all depths by period detection.
    bool exact = false;
    /// Depths actually inspected (the qualifying depth when not exact).
    std::size_t verified_depth = 0;
    /// Lengths at which every node splits, below `period_start + period`.
    std::vector<std::size_t> splitting_lengths;
    /// Depth at which the walk became periodic and its period.
    std::optional<std::size_t> period_start;
    std::optional<std::size_t> period;

    std::string summary() const;
};

/// Balanced / uniform / Silver classification. Finite-state presentations
/// are decided exactly; trees with a horizon are checked up to
/// min(depth, horizon).
Classification classify(const Tree& tree, std::size_t depth);

/// Image of w under the order isomorphism 2^<ω -> Split(P): the first split
/// point of P reached by following w through the split structure.
BinWord canon_embed(const Tree& tree, const BinWord& w);

}  // namespace pnull
