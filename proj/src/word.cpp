#include "pnull/word.hpp"

#include <charconv>

#include "pnull/error.hpp"

namespace pnull {

namespace {

constexpr std::string_view kEpsilon = "ε";

}  // namespace

BinWord::BinWord(std::vector<Bit> bits) : bits_(std::move(bits)) {
    for (Bit b : bits_) {
        if (b > 1) fail(ErrorKind::InvalidArgument, "bit value out of {0,1}");
    }
}

BinWord::BinWord(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) {
        if (b != 0 && b != 1) fail(ErrorKind::InvalidArgument, "bit value out of {0,1}");
        bits_.push_back(static_cast<Bit>(b));
    }
}

BinWord BinWord::parse(std::string_view text) {
    if (text == kEpsilon) return BinWord();
    std::vector<Bit> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            fail(ErrorKind::Parse, "not a binary word: '" + std::string(text) + "'");
        }
        bits.push_back(static_cast<Bit>(c - '0'));
    }
    BinWord w;
    w.bits_ = std::move(bits);
    return w;
}

BinWord BinWord::zeros(std::size_t length) {
    BinWord w;
    w.bits_.assign(length, 0);
    return w;
}

BinWord BinWord::unit(std::size_t length, std::size_t position) {
    if (position >= length) fail(ErrorKind::IndexOutOfRange, "unit vector position out of range");
    BinWord w = zeros(length);
    w.bits_[position] = 1;
    return w;
}

BinWord BinWord::from_integer(std::uint64_t value, std::size_t length) {
    BinWord w = zeros(length);
    for (std::size_t i = 0; i < length; ++i) {
        const std::size_t shift = length - 1 - i;
        w.bits_[i] = shift < 64 ? static_cast<Bit>((value >> shift) & 1U) : 0;
    }
    return w;
}

Bit BinWord::at(std::size_t i) const {
    if (i >= bits_.size()) fail(ErrorKind::IndexOutOfRange, "bit index out of range");
    return bits_[i];
}

BinWord BinWord::append(Bit b) const {
    if (b > 1) fail(ErrorKind::InvalidArgument, "bit value out of {0,1}");
    BinWord w = *this;
    w.bits_.push_back(b);
    return w;
}

BinWord BinWord::concat(const BinWord& tail) const {
    BinWord w = *this;
    w.bits_.insert(w.bits_.end(), tail.bits_.begin(), tail.bits_.end());
    return w;
}

BinWord BinWord::prefix(std::size_t length) const {
    if (length > bits_.size()) fail(ErrorKind::IndexOutOfRange, "prefix longer than word");
    BinWord w;
    w.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(length));
    return w;
}

std::uint64_t BinWord::to_integer() const {
    std::uint64_t v = 0;
    for (Bit b : bits_) v = (v << 1) | b;
    return v;
}

bool BinWord::is_prefix_of(const BinWord& other) const {
    if (bits_.size() > other.bits_.size()) return false;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] != other.bits_[i]) return false;
    }
    return true;
}

std::string BinWord::to_string() const {
    if (bits_.empty()) return std::string(kEpsilon);
    std::string s;
    s.reserve(bits_.size());
    for (Bit b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
}

std::size_t BinWordHash::operator()(const BinWord& w) const noexcept {
    // FNV-1a over the bits, with the length folded in.
    std::size_t h = 1469598103934665603ULL ^ w.size();
    for (Bit b : w.bits()) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

BinWord subword(const BinWord& w, std::size_t a, std::size_t b) {
    if (a > b || b >= w.size()) {
        fail(ErrorKind::IndexOutOfRange, "subword range [" + std::to_string(a) + "," +
                                             std::to_string(b) + "] invalid for length " +
                                             std::to_string(w.size()));
    }
    std::vector<Bit> bits(w.bits().begin() + static_cast<std::ptrdiff_t>(a),
                          w.bits().begin() + static_cast<std::ptrdiff_t>(b) + 1);
    return BinWord(std::move(bits));
}

BinWord select(const BinWord& w, std::span<const std::size_t> indices) {
    std::vector<Bit> bits;
    bits.reserve(indices.size());
    for (std::size_t i : indices) {
        if (i >= w.size()) {
            fail(ErrorKind::IndexOutOfRange, "select index " + std::to_string(i) +
                                                 " out of range for length " +
                                                 std::to_string(w.size()));
        }
        bits.push_back(w[i]);
    }
    return BinWord(std::move(bits));
}

BinWord select(const BinWord& w, std::initializer_list<std::size_t> indices) {
    return select(w, std::span<const std::size_t>(indices.begin(), indices.size()));
}

BinWord xor_sum(const BinWord& u, const BinWord& v) {
    if (u.size() != v.size()) fail(ErrorKind::LengthMismatch, "xor_sum of words of different length");
    std::vector<Bit> bits(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) bits[i] = u[i] ^ v[i];
    return BinWord(std::move(bits));
}

BinWord interleave(const BinWord& u, const BinWord& v) {
    if (u.size() != v.size() && u.size() != v.size() + 1) {
        fail(ErrorKind::LengthMismatch, "interleave needs |u| = |v| or |u| = |v| + 1");
    }
    std::vector<Bit> bits;
    bits.reserve(u.size() + v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        bits.push_back(u[i]);
        if (i < v.size()) bits.push_back(v[i]);
    }
    return BinWord(std::move(bits));
}

std::pair<BinWord, BinWord> deinterleave(const BinWord& w) {
    std::vector<Bit> even, odd;
    even.reserve((w.size() + 1) / 2);
    odd.reserve(w.size() / 2);
    for (std::size_t i = 0; i < w.size(); ++i) (i % 2 == 0 ? even : odd).push_back(w[i]);
    return {BinWord(std::move(even)), BinWord(std::move(odd))};
}

NatWord NatWord::parse(std::string_view text) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
        fail(ErrorKind::Parse, "NatWord must be bracketed: '" + std::string(text) + "'");
    }
    std::string_view body = text.substr(1, text.size() - 2);
    std::vector<std::uint64_t> entries;
    while (!body.empty()) {
        const auto comma = body.find(',');
        std::string_view item = body.substr(0, comma);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (ec != std::errc() || ptr != item.data() + item.size() || item.empty()) {
            fail(ErrorKind::Parse, "bad NatWord entry '" + std::string(item) + "'");
        }
        entries.push_back(value);
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
        if (body.empty()) fail(ErrorKind::Parse, "trailing comma in NatWord");
    }
    return NatWord(std::move(entries));
}

NatWord NatWord::append(std::uint64_t k) const {
    NatWord w = *this;
    w.entries_.push_back(k);
    return w;
}

std::string NatWord::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(entries_[i]);
    }
    return s + "]";
}

}  // namespace pnull
