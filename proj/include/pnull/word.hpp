#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pnull {

using Bit = std::uint8_t;

/// Finite word over {0,1}. Immutable value type; ordering is lexicographic
/// with a proper prefix ordered before its extensions.
class BinWord {
public:
    BinWord() = default;
    explicit BinWord(std::vector<Bit> bits);
    BinWord(std::initializer_list<int> bits);

    /// Accepts a string over {0,1}; "ε" and "" denote the empty word.
    static BinWord parse(std::string_view text);
    static BinWord zeros(std::size_t length);
    /// Length-`length` word with a single 1 at `position`.
    static BinWord unit(std::size_t length, std::size_t position);
    /// Big-endian binary notation of `value` in exactly `length` bits.
    static BinWord from_integer(std::uint64_t value, std::size_t length);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    Bit operator[](std::size_t i) const { return bits_[i]; }
    Bit at(std::size_t i) const;
    std::span<const Bit> bits() const { return bits_; }

    BinWord append(Bit b) const;
    BinWord concat(const BinWord& tail) const;
    BinWord prefix(std::size_t length) const;
    /// Reads the word as a big-endian binary numeral; empty word is 0.
    std::uint64_t to_integer() const;

    /// True when this word is an initial segment of `other` (equality counts).
    bool is_prefix_of(const BinWord& other) const;
    bool comparable_with(const BinWord& other) const {
        return is_prefix_of(other) || other.is_prefix_of(*this);
    }

    std::string to_string() const;

    friend auto operator<=>(const BinWord&, const BinWord&) = default;
    friend bool operator==(const BinWord&, const BinWord&) = default;

    friend std::ostream& operator<<(std::ostream& os, const BinWord& w) {
        return os << w.to_string();
    }

private:
    std::vector<Bit> bits_;
};

struct BinWordHash {
    std::size_t operator()(const BinWord& w) const noexcept;
};

/// w[a,b]: the bits at positions a..b inclusive.
BinWord subword(const BinWord& w, std::size_t a, std::size_t b);
/// w<s_0,...,s_k>: the bits at the listed positions, in order.
BinWord select(const BinWord& w, std::span<const std::size_t> indices);
BinWord select(const BinWord& w, std::initializer_list<std::size_t> indices);
/// Bitwise sum mod 2 of two equal-length words.
BinWord xor_sum(const BinWord& u, const BinWord& v);
/// <u(0), v(0), u(1), v(1), ...>; |u| must equal |v| or |v| + 1.
BinWord interleave(const BinWord& u, const BinWord& v);
/// Inverse of interleave: (even positions, odd positions).
std::pair<BinWord, BinWord> deinterleave(const BinWord& w);

/// Finite word over the naturals, rendered as "[a,b,c]".
class NatWord {
public:
    NatWord() = default;
    explicit NatWord(std::vector<std::uint64_t> entries) : entries_(std::move(entries)) {}
    NatWord(std::initializer_list<std::uint64_t> entries) : entries_(entries) {}

    static NatWord parse(std::string_view text);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::uint64_t operator[](std::size_t i) const { return entries_[i]; }
    std::span<const std::uint64_t> entries() const { return entries_; }

    NatWord append(std::uint64_t k) const;
    std::string to_string() const;

    friend auto operator<=>(const NatWord&, const NatWord&) = default;
    friend bool operator==(const NatWord&, const NatWord&) = default;

private:
    std::vector<std::uint64_t> entries_;
};

}  // namespace pnull
