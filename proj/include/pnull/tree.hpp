#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pnull/automaton.hpp"
#include "pnull/word.hpp"

namespace pnull {

enum class TreeKind { Full, Explicit, BlockPeriodic, Silver, Product, SubtreeAt };

/// Silver entries: -1 splits every node at that length, 0 or 1 forces the bit.
using SilverEntry = std::int8_t;

struct ValidationReport {
    bool pruned = false;
    bool perfect = false;
    /// False when the presentation is finite (Explicit somewhere inside) and
    /// the verdict only covers the known part of the tree.
    bool exact = true;
    /// Smallest length at which a horizon node is reachable.
    std::optional<std::size_t> horizon;
    /// For inexact trees: every node of length <= this has a splitting
    /// descendant within the horizon.
    std::optional<std::size_t> perfect_up_to;
    /// Offending nodes: a dead end, or a node with no splitting descendant.
    std::vector<BinWord> witnesses;

    std::string summary() const;
};

struct TreeSpec;

/// Immutable handle to a finitely presented closed subtree of 2^<ω. The
/// block automaton (or its analogue for other variants) is compiled and the
/// tree validated when the handle is created, so every query afterwards is
/// read-only.
class Tree {
public:
    static Tree full();
    /// Finite truncation: all frontier words share length `depth`.
    static Tree explicit_tree(std::size_t depth, std::vector<BinWord> frontier);
    /// Branches whose consecutive length-k blocks all lie in `blocks`.
    static Tree blocks(std::size_t k, std::vector<BinWord> blocks);
    /// Eventually periodic Silver sequence; `period` must contain -1.
    static Tree silver(std::vector<SilverEntry> prefix, std::vector<SilverEntry> period);
    static Tree product(const Tree& left, const Tree& right);
    /// Nodes comparable with `root`; `root` must be a node of `base`.
    static Tree subtree(const Tree& base, const BinWord& root);

    TreeKind kind() const;
    const TreeSpec& spec() const;
    const Automaton& automaton() const;
    const ValidationReport& report() const;
    /// Canonical nested textual form, e.g. "product(full,blocks(2){00 11})".
    std::string describe() const;

    /// Identity of the shared presentation (two handles to the same object).
    bool same_as(const Tree& other) const { return data_ == other.data_; }

    struct Data;

private:
    explicit Tree(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
};

struct FullSpec {};
struct ExplicitSpec {
    std::size_t depth = 0;
    std::vector<BinWord> frontier;  // sorted, unique
};
struct BlockSpec {
    std::size_t k = 0;
    std::vector<BinWord> blocks;  // sorted, unique
};
struct SilverSpec {
    std::vector<SilverEntry> prefix;
    std::vector<SilverEntry> period;

    SilverEntry entry(std::size_t n) const {
        return n < prefix.size() ? prefix[n] : period[(n - prefix.size()) % period.size()];
    }
};
struct ProductSpec {
    Tree left;
    Tree right;
};
struct SubtreeSpec {
    Tree base;
    BinWord root;
};

struct TreeSpec {
    std::variant<FullSpec, ExplicitSpec, BlockSpec, SilverSpec, ProductSpec, SubtreeSpec> value;
};

/// Membership in the presented tree, decided directly on the presentation
/// (products are deinterleaved, never materialised). Explicit trees throw
/// BeyondHorizon for words longer than their depth.
bool contains(const Tree& tree, const BinWord& w);
/// Children of a node as a bit mask (bit 0 -> 1, bit 1 -> 2).
std::uint8_t children(const Tree& tree, const BinWord& w);

ValidationReport validate(const Tree& tree);

Tree product(const Tree& left, const Tree& right);

/// Splits a Silver tree into the trees of its even- and odd-indexed entries.
/// A component with no -1 in its period is a finite set and comes back as
/// an Explicit truncation at `finite_horizon`.
struct SilverSplit {
    Tree even;
    Tree odd;
    bool even_finite = false;
    bool odd_finite = false;
};
SilverSplit silver_split(const Tree& silver, std::size_t finite_horizon = 64);

}  // namespace pnull
