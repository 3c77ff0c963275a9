#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pnull/rational.hpp"
#include "pnull/tree.hpp"

namespace pnull::kernels {

/// counts[d][l]: nodes of T_P ∩ T_X of length d on level l of P. Built by
/// walking every node, so it doubles as a brute-force oracle for the
/// automaton-based trace.
struct LevelHistograms {
    std::vector<std::vector<std::uint64_t>> counts;

    /// μ_P of the depth-d hull: Σ_l counts[d][l] / 2^l.
    Rational mass(std::size_t d) const { return dyadic_sum(counts[d]); }
    friend bool operator==(const LevelHistograms&, const LevelHistograms&) = default;
};

/// Outcome of checking l_{P×Q}(v) = l_P(v_even) + l_Q(v_odd) on every
/// even-length node of the product up to `depth`.
struct ProductCheck {
    std::uint64_t nodes = 0;
    std::uint64_t mismatches = 0;
    friend bool operator==(const ProductCheck&, const ProductCheck&) = default;
};

namespace serial {
LevelHistograms trace_histograms(const Tree& p, const Tree& x, std::size_t depth);
ProductCheck product_check(const Tree& p, const Tree& q, std::size_t depth);
}  // namespace serial

namespace parallel {
/// threads <= 0 leaves the OpenMP default in place.
LevelHistograms trace_histograms(const Tree& p, const Tree& x, std::size_t depth, int threads = 0);
ProductCheck product_check(const Tree& p, const Tree& q, std::size_t depth, int threads = 0);
}  // namespace parallel

}  // namespace pnull::kernels
