#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pnull/rational.hpp"
#include "pnull/tree.hpp"
#include "pnull/word.hpp"

namespace pnull {

/// μ_P([w]_P) = 1/2^{l_P(w)}. Words that leave T_P get 0: the cylinder
/// misses P. Words past an explicit horizon throw BeyondHorizon.
Rational mu_cylinder(const Tree& tree, const BinWord& w);

/// Measure of a finite union of cylinders; redundant extensions are
/// absorbed into their prefixes before summing.
Rational mu_clopen(const Tree& tree, const std::vector<BinWord>& words);

enum class TraceMethod { ExactSolve, DepthBounded };

struct TraceResult {
    std::optional<Rational> exact;
    /// upper_bounds[d]: P-measure of the depth-d clopen hull of X ∩ P.
    std::vector<Rational> upper_bounds;
    TraceMethod method = TraceMethod::DepthBounded;
};

/// Hull measures μ_P(⋃{[w]_P : w ∈ T_P ∩ T_X, |w| = d}) for d = 0..depth,
/// computed by pushing mass through the pair automaton.
TraceResult trace_upper(const Tree& p, const Tree& x, std::size_t depth);

/// Depth used when a trace query gives none: 3·L rounds of L symbols, where
/// L is the lcm of the period lengths, after any non-periodic prefix;
/// capped at 60 symbols and at any horizon.
std::size_t default_trace_depth(const Tree& p, const Tree& x);

/// Exact μ_P(X ∩ P) for finite-state presentations, as the survival
/// probability of the uniform split walk on P inside T_X. Throws
/// Unsupported when either tree has a horizon.
TraceResult trace_exact(const Tree& p, const Tree& x);

/// μ_{P×Q}([v]) on the product tree, cross-checked against
/// μ_P([w_P]) · μ_Q([w_Q]) for the deinterleaved halves of v.
Rational product_measure(const Tree& p, const Tree& q, const BinWord& v);
/// Same, on an already built product(P, Q).
Rational product_measure(const Tree& pq, const BinWord& v);

/// Natural measure on ω^ω: m([w]) = Π 1/2^{w(i)+1}.
Rational baire_measure(const NatWord& w);

}  // namespace pnull
