#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pnull/rational.hpp"
#include "pnull/tree.hpp"
#include "pnull/word.hpp"

namespace pnull {

enum class Named { FULL, E, Q, PJ, U, BST };

struct NamedConstruction {
    std::string name;
    Tree presentation;
    /// Claims such as "uniform" or "not-balanced"; see check_claims.
    std::vector<std::string> expected_properties;
};

std::optional<Named> named_from_string(std::string_view name);
std::string_view to_string(Named n);
const std::vector<Named>& all_named();

NamedConstruction make_named(Named n);
/// Shared instance, built once.
const Tree& named_tree(Named n);

const std::vector<BinWord>& blocks_K();
const std::vector<BinWord>& blocks_L();
const std::vector<BinWord>& blocks_J();

/// Depth of the BST truncation: every level-i split for i <= 5 lies above it.
inline constexpr std::size_t kStaircaseDepth = 127;

/// One split per length and balanced: at length n the split goes to a live
/// node that has not yet split on the current level. The plain version
/// always picks the lexicographically least such node.
Tree staircase(std::size_t depth);
Tree staircase(std::size_t depth, std::mt19937_64& rng);

struct ClaimCheck {
    std::string claim;
    bool holds = false;
};
std::vector<ClaimCheck> check_claims(const NamedConstruction& nc);

std::vector<BinWord> project_blocks(const std::vector<BinWord>& blocks, std::span<const std::size_t> idx);

struct Table1Row {
    BinWord s;
    BinWord w;  // s<0,2,4,6>
    Rational mu_q;
    std::size_t fiber = 0;  // |{s' in J : s'<0,2,4,6> = w}|
    Rational fiber_measure;
};
/// One row per s in J, in lexicographic order; Integrity error if the
/// cylinder measure and the fiber measure disagree anywhere.
std::vector<Table1Row> table1();

struct Table2Row {
    BinWord s;
    BinWord w;  // s<1,3,5,7>
};
/// Integrity error unless every image lies in L and the images cover L.
std::vector<Table2Row> table2();

BinWord phi(const BinWord& w);
/// All φ(w) with |w| = level, in lexicographic order of w.
std::vector<BinWord> phi_level(std::size_t level);

/// Linear independence over Z_2 of the restrictions to positions [a, b).
bool z2_independent(const std::vector<BinWord>& words, std::size_t a, std::size_t b);

struct LusinStage {
    std::vector<NatWord> nodes;        // T_n
    std::vector<std::uint64_t> m;      // M_w per node
    Rational covered;                  // m(⋃[s], s in T_n)
    Rational removed_mass;             // covered(n) - covered(n+1)
};

struct LusinTree {
    std::vector<LusinStage> stages;
    std::vector<NatWord> last;  // T_stages
    Rational total_removed;
};

/// Stages 0..stages-1; CapExceeded when some T_n would exceed `cap` nodes.
LusinTree lusin_tree(std::size_t stages, std::size_t cap = std::size_t{1} << 18);

}  // namespace pnull
