#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pnull/pair_automaton.hpp"
#include "pnull/rational.hpp"
#include "pnull/tree.hpp"
#include "pnull/word.hpp"

namespace pnull {

struct CoverEntry {
    BinWord node;
    std::size_t level = 0;

    friend bool operator==(const CoverEntry&, const CoverEntry&) = default;
};

struct RoundRecord {
    std::uint64_t count = 0;
    Rational mass;

    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

/// Cover S_m of X ∩ P from m refinement rounds with escape windows of
/// length k. replay_log[r] describes S_r; replay_log.back() is the cover.
struct BoundCertificate {
    std::string host;    // describe() of P
    std::string target;  // describe() of X
    std::size_t k = 0;
    std::size_t rounds = 0;
    std::vector<CoverEntry> cover;  // lexicographically sorted antichain
    Rational bound;
    std::vector<RoundRecord> replay_log;
};

/// ((2^k-1)/2^k)^rounds
Rational lemma1_formula(std::size_t k, std::size_t rounds);

using CoverSink = std::function<void(std::span<const Bit> node, std::size_t level)>;

struct RefineSummary {
    Rational bound;
    std::vector<RoundRecord> replay_log;
    std::uint64_t entries = 0;
};

/// Runs the refinement and hands each cover entry to `sink` in
/// lexicographic order without storing the cover.
RefineSummary lemma1_stream(const Tree& p, const Tree& x, std::size_t k, std::size_t rounds,
                            const CoverSink& sink);

/// Materialised certificate; CapExceeded if the cover has more than
/// `max_entries` elements.
BoundCertificate lemma1_refine(const Tree& p, const Tree& x, std::size_t k, std::size_t rounds,
                               std::size_t max_entries = std::size_t{1} << 20);

/// Replays a cover fed in order. Shares no code with the refinement beyond
/// the compiled automata.
class CertificateChecker {
public:
    CertificateChecker(const Tree& p, const Tree& x, std::size_t k, std::size_t rounds);

    void feed(std::span<const Bit> node, std::size_t level);
    /// Final checks; returns the recomputed bound. Throws Integrity on any
    /// mismatch.
    Rational finish(const Rational& claimed, const std::vector<RoundRecord>& log);

    std::uint64_t entries() const { return entries_; }

private:
    void check_gap(std::size_t depth, Bit bit) const;
    void grow(std::size_t n);

    const Automaton& p_;
    std::size_t k_;
    std::size_t rounds_;
    PairAutomaton pairs_;
    std::vector<bool> dead_;
    // per pair: bit b set when skipping child b would drop a live pair;
    // kHorizonGap marks pairs whose children are unknown
    std::vector<std::uint8_t> gap_;

    // P state, pair (-1 once outside X) and level after each prefix of path_
    struct Frame {
        StateId p;
        std::int32_t q;
        std::size_t level;
    };
    std::vector<Bit> path_;
    std::vector<Frame> stack_;
    std::size_t len_ = 0;  // live prefix of path_; stack_ holds len_ + 1 frames
    std::vector<std::uint64_t> histogram_;
    std::uint64_t entries_ = 0;
};

void check_certificate(const Tree& p, const Tree& x, const BoundCertificate& cert);

/// Line-oriented text form; parse_certificate is its inverse.
std::string serialize(const BoundCertificate& cert);
BoundCertificate parse_certificate(std::string_view text);
/// Several certificates back to back, as written by the CLI.
std::vector<BoundCertificate> parse_certificates(std::string_view text);

}  // namespace pnull
