#include "pnull/certificate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <optional>
#include <sstream>

#include "pnull/error.hpp"

namespace pnull {

Rational lemma1_formula(std::size_t k, std::size_t rounds) {
    const long den = 1L << k;
    return Rational::pow(Rational(den - 1, den), rounds);
}

namespace {

constexpr std::size_t kMaxWindow = 20;

// Length of the longest common prefix, eight bits at a time.
std::size_t common_prefix(std::span<const Bit> a, std::span<const Bit> b) {
    const std::size_t n = std::min(a.size(), b.size());
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        std::uint64_t x, y;
        std::memcpy(&x, a.data() + i, 8);
        std::memcpy(&y, b.data() + i, 8);
        if (x != y) {
            const std::uint64_t d = x ^ y;
            if constexpr (std::endian::native == std::endian::little) return i + std::countr_zero(d) / 8;
            else return i + std::countl_zero(d) / 8;
        }
    }
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

// A node of T_P seen through the pair automaton: `pair` indexes a pair
// still inside T_X, or is -1 once the word has left T_X, in which case
// only the P state matters.
struct NodeState {
    std::int32_t pair;
    StateId p;
};

struct Window {
    std::uint32_t bits;
    std::array<Bit, kMaxWindow> word;
    NodeState to;
    std::uint8_t splits;
};

struct Info {
    bool escape = false;
    std::vector<Window> keep;
};

class Refiner {
public:
    Refiner(const Tree& p, const Tree& x, std::size_t k, std::size_t rounds, const CoverSink& sink)
        : pa_(p.automaton()),
          k_(k),
          rounds_(rounds),
          sink_(sink),
          g_(PairAutomaton::build(p.automaton(), x.automaton(), false)),
          alive_info_(g_.size()),
          exited_info_(pa_.size()),
          color_(g_.size(), 0),
          hist_(rounds + 1) {
        // live[i]: some infinite path from i stays inside T_X. Horizon pairs
        // count as live since nothing is known past them.
        live_.assign(g_.size(), true);
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = 0; i < g_.size(); ++i) {
                if (!live_[i] || g_.horizon[i]) continue;
                bool any = false;
                for (std::int32_t j : g_.next[i]) any |= j >= 0 && live_[static_cast<std::size_t>(j)];
                if (!any) {
                    live_[i] = false;
                    changed = true;
                }
            }
        }
    }

    RefineSummary run() {
        cover({0, pa_.start}, 0, 0);
        RefineSummary out;
        for (const auto& h : hist_) {
            std::uint64_t count = 0;
            for (std::uint64_t c : h) count += c;
            out.replay_log.push_back({count, dyadic_sum(h)});
        }
        out.bound = out.replay_log.back().mass;
        out.entries = out.replay_log.back().count;
        return out;
    }

private:
    StateId p_of(NodeState s) const {
        return s.pair >= 0 ? g_.pairs[static_cast<std::size_t>(s.pair)].p : s.p;
    }

    std::uint8_t mask_of(NodeState s) const {
        if (s.pair >= 0) {
            const auto i = static_cast<std::size_t>(s.pair);
            if (g_.horizon[i]) fail(ErrorKind::BeyondHorizon, "refinement reached a horizon");
            return g_.p_mask[i];
        }
        return pa_.child_mask(s.p);
    }

    NodeState step(NodeState s, Bit b) const {
        if (s.pair >= 0) {
            const std::int32_t j = g_.next[static_cast<std::size_t>(s.pair)][b];
            if (j >= 0) return {j, g_.pairs[static_cast<std::size_t>(j)].p};
            return {-1, pa_.next(p_of(s), b)};
        }
        return {-1, pa_.next(s.p, b)};
    }

    bool escapes(NodeState s) const {
        return s.pair < 0 || !live_[static_cast<std::size_t>(s.pair)];
    }

    const Info& info(NodeState s) {
        auto& slot = s.pair >= 0 ? alive_info_[static_cast<std::size_t>(s.pair)]
                                 : exited_info_[static_cast<std::size_t>(s.p)];
        if (slot) return *slot;
        Info in;
        for (std::uint32_t bits = 0; bits < (1U << k_); ++bits) {
            NodeState cur = s;
            std::uint8_t splits = 0;
            bool inside = true;
            for (std::size_t i = 0; i < k_ && inside; ++i) {
                const Bit b = (bits >> (k_ - 1 - i)) & 1U;
                const std::uint8_t mask = mask_of(cur);
                if (!(mask & (1U << b))) {
                    inside = false;
                    break;
                }
                if (mask == 3) ++splits;
                cur = step(cur, b);
            }
            if (!inside) continue;
            if (!in.escape && escapes(cur)) {
                in.escape = true;
                continue;
            }
            Window w{bits, {}, cur, splits};
            for (std::size_t i = 0; i < k_; ++i) w.word[i] = (bits >> (k_ - 1 - i)) & 1U;
            in.keep.push_back(w);
        }
        slot = std::move(in);
        return *slot;
    }

    // True when an infinite path of nodes without escape windows starts at
    // alive pair i.
    bool stuck(std::int32_t i) {
        auto& c = color_[static_cast<std::size_t>(i)];
        if (c == 2) return false;
        if (c == 3) return true;
        if (c == 1) return true;
        if (info({i, g_.pairs[static_cast<std::size_t>(i)].p}).escape) {
            c = 2;
            return false;
        }
        c = 1;
        bool bad = false;
        for (Bit b = 0; b < 2 && !bad; ++b) {
            const std::int32_t j = g_.next[static_cast<std::size_t>(i)][b];
            if (j >= 0) bad = stuck(j);
        }
        c = bad ? 3 : 2;
        return bad;
    }

    void cover(NodeState s, std::size_t level, std::size_t round) {
        auto& h = hist_[round];
        if (h.size() <= level) h.resize(level + 1, 0);
        ++h[level];
        if (round == rounds_) {
            sink_(std::span<const Bit>(path_.data(), len_), level);
            return;
        }
        descend(s, level, round, len_);
    }

    void descend(NodeState s, std::size_t level, std::size_t round, std::size_t cover_depth) {
        const Info& in = info(s);
        if (in.escape) {
            reserve(len_ + k_);
            for (const Window& w : in.keep) {
                std::copy_n(w.word.begin(), k_, path_.begin() + static_cast<long>(len_));
                len_ += k_;
                cover(w.to, level + w.splits, round + 1);
                len_ -= k_;
            }
            return;
        }
        if (s.pair >= 0 && stuck(s.pair)) {
            const BinWord at(std::vector<Bit>(path_.begin(), path_.begin() + static_cast<long>(cover_depth)));
            fail(ErrorKind::WitnessNotFound, "no escape window below " + at.to_string());
        }
        const std::uint8_t mask = mask_of(s);
        const std::size_t next_level = level + (mask == 3 ? 1 : 0);
        reserve(len_ + 1);
        for (Bit b = 0; b < 2; ++b) {
            if (!(mask & (1U << b))) continue;
            path_[len_++] = b;
            descend(step(s, b), next_level, round, cover_depth);
            --len_;
        }
    }

    void reserve(std::size_t n) {
        if (path_.size() < n) path_.resize(std::max(n, 2 * path_.size()));
    }

    const Automaton& pa_;
    std::size_t k_;
    std::size_t rounds_;
    const CoverSink& sink_;
    PairAutomaton g_;
    std::vector<bool> live_;
    std::vector<std::optional<Info>> alive_info_;
    std::vector<std::optional<Info>> exited_info_;
    std::vector<std::uint8_t> color_;
    std::vector<std::vector<std::uint64_t>> hist_;
    std::vector<Bit> path_;  // only the first len_ bits are live
    std::size_t len_ = 0;
};

void check_arguments(const Tree& p, std::size_t k) {
    if (k == 0 || k > kMaxWindow) {
        fail(ErrorKind::InvalidArgument, "window length must be between 1 and " + std::to_string(kMaxWindow));
    }
    if (!p.report().perfect) {
        fail(ErrorKind::InvalidPresentation, "host tree is not perfect: " + p.report().summary());
    }
}

}  // namespace

RefineSummary lemma1_stream(const Tree& p, const Tree& x, std::size_t k, std::size_t rounds,
                            const CoverSink& sink) {
    check_arguments(p, k);
    Refiner r(p, x, k, rounds, sink);
    RefineSummary out = r.run();
    if (out.bound > lemma1_formula(k, rounds)) {
        fail(ErrorKind::Integrity, "cover mass " + out.bound.to_string() + " exceeds the lemma bound");
    }
    return out;
}

BoundCertificate lemma1_refine(const Tree& p, const Tree& x, std::size_t k, std::size_t rounds,
                               std::size_t max_entries) {
    BoundCertificate cert;
    cert.host = p.describe();
    cert.target = x.describe();
    cert.k = k;
    cert.rounds = rounds;
    const RefineSummary s = lemma1_stream(p, x, k, rounds, [&](std::span<const Bit> node, std::size_t level) {
        if (cert.cover.size() >= max_entries) {
            fail(ErrorKind::CapExceeded, "cover exceeds " + std::to_string(max_entries) + " entries");
        }
        cert.cover.push_back({BinWord(std::vector<Bit>(node.begin(), node.end())), level});
    });
    cert.bound = s.bound;
    cert.replay_log = s.replay_log;
    return cert;
}

namespace {
constexpr std::uint8_t kHorizonGap = 4;
}

CertificateChecker::CertificateChecker(const Tree& p, const Tree& x, std::size_t k, std::size_t rounds)
    : p_(p.automaton()),
      k_(k),
      rounds_(rounds),
      pairs_(PairAutomaton::build(p.automaton(), x.automaton(), false)) {
    if (k == 0 || k > kMaxWindow) fail(ErrorKind::Integrity, "certificate window length out of range");
    // dead_[i]: every path from i leaves T_X before any horizon.
    dead_.assign(pairs_.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = pairs_.size(); i-- > 0;) {
            if (dead_[i] || pairs_.horizon[i]) continue;
            bool all_dead = true;
            for (std::int32_t j : pairs_.next[i]) {
                if (j >= 0 && !dead_[static_cast<std::size_t>(j)]) all_dead = false;
            }
            if (all_dead) {
                dead_[i] = true;
                changed = true;
            }
        }
    }
    gap_.assign(pairs_.size(), 0);
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (pairs_.horizon[i]) {
            gap_[i] = kHorizonGap;
            continue;
        }
        for (Bit b = 0; b < 2; ++b) {
            const std::int32_t j = pairs_.next[i][b];
            if (j >= 0 && !dead_[static_cast<std::size_t>(j)]) gap_[i] |= static_cast<std::uint8_t>(1U << b);
        }
    }
    grow(64);
    stack_[0] = {p_.start, 0, 0};
}

void CertificateChecker::grow(std::size_t n) {
    if (path_.size() >= n) return;
    n = std::max(n, 2 * path_.size());
    path_.resize(n);
    stack_.resize(n + 1);
}

void CertificateChecker::check_gap(std::size_t depth, Bit bit) const {
    const std::int32_t q = stack_[depth].q;
    if (q < 0) return;
    const std::uint8_t g = gap_[static_cast<std::size_t>(q)];
    if (!(g & (kHorizonGap | (1U << bit)))) return;
    if (g & kHorizonGap) fail(ErrorKind::BeyondHorizon, "cover reaches past a presentation horizon");
    std::vector<Bit> w(path_.begin(), path_.begin() + static_cast<long>(depth));
    w.push_back(bit);
    fail(ErrorKind::Integrity, "cover misses part of X ∩ P inside [" + BinWord(std::move(w)).to_string() + "]");
}

void CertificateChecker::feed(std::span<const Bit> node, std::size_t level) {
    std::size_t c = 0;
    const bool first = entries_ == 0;
    if (!first) {
        c = common_prefix(std::span<const Bit>(path_.data(), len_), node);
        if (c == len_ || c == node.size()) fail(ErrorKind::Integrity, "cover is not an antichain");
        if (path_[c] > node[c]) fail(ErrorKind::Integrity, "cover entries out of order");
        // right siblings along the old path are gaps
        for (std::size_t j = len_; j-- > c + 1;) {
            if (path_[j] == 0) check_gap(j, 1);
        }
    }
    grow(node.size());
    for (std::size_t j = c; j < node.size(); ++j) {
        const Bit b = node[j];
        if (b > 1) fail(ErrorKind::Integrity, "cover entry is not binary");
        // and so are left siblings along the new one
        if ((first || j > c) && b == 1) check_gap(j, 0);
        const Frame& f = stack_[j];
        const std::uint8_t mask = p_.child_mask(f.p);
        if (!(mask & (1U << b))) fail(ErrorKind::Integrity, "cover entry leaves the host tree");
        std::int32_t q = -1;
        if (f.q >= 0) {
            const auto i = static_cast<std::size_t>(f.q);
            if (pairs_.horizon[i]) fail(ErrorKind::BeyondHorizon, "cover reaches past a presentation horizon");
            q = pairs_.next[i][b];
        }
        stack_[j + 1] = {p_.next(f.p, b), q, f.level + (mask == 3 ? 1U : 0U)};
        path_[j] = b;
    }
    len_ = node.size();
    if (stack_[len_].level != level) {
        fail(ErrorKind::Integrity, "wrong level " + std::to_string(level) + " for cover entry " +
                                       BinWord(std::vector<Bit>(path_.begin(), path_.begin() + static_cast<long>(len_)))
                                           .to_string());
    }
    if (histogram_.size() <= level) histogram_.resize(level + 1, 0);
    ++histogram_[level];
    ++entries_;
}

Rational CertificateChecker::finish(const Rational& claimed, const std::vector<RoundRecord>& log) {
    if (entries_ == 0) {
        if (!dead_[0]) fail(ErrorKind::Integrity, "empty cover but X ∩ P is nonempty");
    } else {
        for (std::size_t j = len_; j-- > 0;) {
            if (path_[j] == 0) check_gap(j, 1);
        }
    }
    const Rational bound = dyadic_sum(histogram_);
    if (bound != claimed) {
        fail(ErrorKind::Integrity, "recomputed bound " + bound.to_string() + " differs from " + claimed.to_string());
    }
    if (bound > lemma1_formula(k_, rounds_)) fail(ErrorKind::Integrity, "bound exceeds the lemma formula");
    if (log.size() != rounds_ + 1) fail(ErrorKind::Integrity, "replay log has the wrong number of rounds");
    if (log.front().count != 1 || log.front().mass != Rational(1)) {
        fail(ErrorKind::Integrity, "replay log does not start from the root");
    }
    const long den = 1L << k_;
    const Rational factor(den - 1, den);
    for (std::size_t r = 1; r < log.size(); ++r) {
        if (log[r].mass > factor * log[r - 1].mass) {
            fail(ErrorKind::Integrity, "round " + std::to_string(r) + " does not shrink the cover enough");
        }
    }
    if (log.back().mass != bound || log.back().count != entries_) {
        fail(ErrorKind::Integrity, "replay log disagrees with the cover");
    }
    return bound;
}

void check_certificate(const Tree& p, const Tree& x, const BoundCertificate& cert) {
    if (cert.host != p.describe() || cert.target != x.describe()) {
        fail(ErrorKind::Integrity, "certificate names different trees");
    }
    CertificateChecker checker(p, x, cert.k, cert.rounds);
    for (const CoverEntry& e : cert.cover) checker.feed(e.node.bits(), e.level);
    checker.finish(cert.bound, cert.replay_log);
}

std::string serialize(const BoundCertificate& cert) {
    std::ostringstream os;
    os << "lemma1-certificate\n";
    os << "host " << cert.host << '\n';
    os << "target " << cert.target << '\n';
    os << "k " << cert.k << '\n';
    os << "rounds " << cert.rounds << '\n';
    for (std::size_t r = 0; r < cert.replay_log.size(); ++r) {
        os << "round " << r << ' ' << cert.replay_log[r].count << ' ' << cert.replay_log[r].mass << '\n';
    }
    os << "cover " << cert.cover.size() << '\n';
    for (const CoverEntry& e : cert.cover) os << e.node << ':' << e.level << '\n';
    os << "bound " << cert.bound << '\n';
    os << "end\n";
    return os.str();
}

namespace {

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    std::string_view next() {
        if (pos_ >= text_.size()) fail(ErrorKind::Parse, "certificate ends early at line " + std::to_string(line_ + 1));
        const std::size_t end = text_.find('\n', pos_);
        const std::size_t stop = end == std::string_view::npos ? text_.size() : end;
        std::string_view line = text_.substr(pos_, stop - pos_);
        pos_ = stop + 1;
        ++line_;
        return line;
    }

    std::string_view expect(std::string_view keyword) {
        std::string_view line = next();
        if (line.substr(0, keyword.size()) != keyword ||
            (line.size() > keyword.size() && line[keyword.size()] != ' ')) {
            fail(ErrorKind::Parse, "line " + std::to_string(line_) + ": expected '" + std::string(keyword) + "'");
        }
        return line.size() > keyword.size() ? line.substr(keyword.size() + 1) : std::string_view{};
    }

    std::size_t line() const { return line_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

std::uint64_t parse_count(std::string_view s, std::size_t line) {
    if (s.empty()) fail(ErrorKind::Parse, "line " + std::to_string(line) + ": missing number");
    std::uint64_t v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') fail(ErrorKind::Parse, "line " + std::to_string(line) + ": bad number");
        v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
}

}  // namespace

BoundCertificate parse_certificate(std::string_view text) {
    LineReader in(text);
    BoundCertificate cert;
    in.expect("lemma1-certificate");
    cert.host = std::string(in.expect("host"));
    cert.target = std::string(in.expect("target"));
    cert.k = parse_count(in.expect("k"), in.line());
    cert.rounds = parse_count(in.expect("rounds"), in.line());
    for (std::size_t r = 0; r <= cert.rounds; ++r) {
        std::istringstream fields{std::string(in.expect("round"))};
        std::string idx, count, mass;
        fields >> idx >> count >> mass;
        if (parse_count(idx, in.line()) != r) fail(ErrorKind::Parse, "line " + std::to_string(in.line()) + ": round out of order");
        cert.replay_log.push_back({parse_count(count, in.line()), Rational::parse(mass)});
    }
    const std::uint64_t n = parse_count(in.expect("cover"), in.line());
    cert.cover.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::string_view line = in.next();
        const std::size_t colon = line.rfind(':');
        if (colon == std::string_view::npos) fail(ErrorKind::Parse, "line " + std::to_string(in.line()) + ": expected node:level");
        cert.cover.push_back({BinWord::parse(line.substr(0, colon)), parse_count(line.substr(colon + 1), in.line())});
    }
    cert.bound = Rational::parse(in.expect("bound"));
    in.expect("end");
    return cert;
}

std::vector<BoundCertificate> parse_certificates(std::string_view text) {
    std::vector<BoundCertificate> out;
    constexpr std::string_view kEnd = "\nend\n";
    std::size_t start = 0;
    while (start < text.size()) {
        if (text.find_first_not_of(" \t\r\n", start) == std::string_view::npos) break;
        std::size_t stop = text.find(kEnd, start);
        stop = stop == std::string_view::npos ? text.size() : stop + kEnd.size();
        out.push_back(parse_certificate(text.substr(start, stop - start)));
        start = stop;
    }
    return out;
}

}  // namespace pnull
