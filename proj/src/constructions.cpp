#include "pnull/constructions.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "pnull/error.hpp"
#include "pnull/measure.hpp"
#include "pnull/splits.hpp"

namespace pnull {

namespace {

std::vector<BinWord> parse_all(std::initializer_list<std::string_view> words) {
    std::vector<BinWord> out;
    for (std::string_view w : words) out.push_back(BinWord::parse(w));
    std::sort(out.begin(), out.end());
    return out;
}

constexpr std::array<std::size_t, 4> kEven{0, 2, 4, 6};
constexpr std::array<std::size_t, 4> kOdd{1, 3, 5, 7};

}  // namespace

const std::vector<BinWord>& blocks_K() {
    static const std::vector<BinWord> k = parse_all({"000", "001", "011", "111"});
    return k;
}

const std::vector<BinWord>& blocks_L() {
    static const std::vector<BinWord> l =
        parse_all({"0000", "0001", "0011", "0111", "1000", "1001", "1011", "1111"});
    return l;
}

const std::vector<BinWord>& blocks_J() {
    static const std::vector<BinWord> j = parse_all(
        {"00000000", "00010111", "00101011", "00111111", "01001010", "01011111", "01101011", "01111111",
         "10000101", "10010111", "10101111", "10111111", "11001111", "11011111", "11101111", "11111111"});
    return j;
}

std::optional<Named> named_from_string(std::string_view name) {
    for (Named n : all_named()) {
        if (to_string(n) == name) return n;
    }
    return std::nullopt;
}

std::string_view to_string(Named n) {
    switch (n) {
        case Named::FULL: return "FULL";
        case Named::E: return "E";
        case Named::Q: return "Q";
        case Named::PJ: return "PJ";
        case Named::U: return "U";
        case Named::BST: return "BST";
    }
    return "?";
}

const std::vector<Named>& all_named() {
    static const std::vector<Named> all{Named::FULL, Named::E, Named::Q, Named::PJ, Named::U, Named::BST};
    return all;
}

namespace {

template <class Choose>
Tree build_staircase(std::size_t depth, Choose choose) {
    struct Node {
        std::vector<Bit> bits;
        std::size_t level;
    };
    std::vector<Node> nodes{{{}, 0}};
    for (std::size_t n = 0; n < depth; ++n) {
        // Level whose splits occupy lengths 2^i - 1 .. 2^{i+1} - 2.
        std::size_t i = 0;
        while ((std::size_t{2} << i) - 1 <= n) ++i;
        std::vector<std::size_t> candidates;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (nodes[j].level == i) candidates.push_back(j);
        }
        if (candidates.empty()) fail(ErrorKind::Integrity, "staircase ran out of split candidates");
        const std::size_t pick = candidates[choose(candidates.size())];
        std::vector<Node> next;
        next.reserve(nodes.size() + 1);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            Node zero = nodes[j];
            zero.bits.push_back(0);
            if (j == pick) {
                Node one = nodes[j];
                one.bits.push_back(1);
                ++zero.level;
                ++one.level;
                next.push_back(std::move(zero));
                next.push_back(std::move(one));
            } else {
                next.push_back(std::move(zero));
            }
        }
        nodes = std::move(next);
    }
    std::vector<BinWord> frontier;
    frontier.reserve(nodes.size());
    for (Node& n : nodes) frontier.emplace_back(std::move(n.bits));
    return Tree::explicit_tree(depth, std::move(frontier));
}

}  // namespace

Tree staircase(std::size_t depth) {
    return build_staircase(depth, [](std::size_t) { return std::size_t{0}; });
}

Tree staircase(std::size_t depth, std::mt19937_64& rng) {
    return build_staircase(depth, [&rng](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    });
}

NamedConstruction make_named(Named n) {
    switch (n) {
        case Named::FULL:
            return {"FULL", Tree::full(), {"perfect", "balanced", "uniform", "silver"}};
        case Named::E:
            return {"E", Tree::blocks(3, blocks_K()), {"perfect", "not-balanced", "not-uniform"}};
        case Named::Q:
            return {"Q", Tree::blocks(4, blocks_L()), {"perfect", "not-uniform"}};
        case Named::PJ:
            return {"PJ", Tree::blocks(8, blocks_J()), {"perfect", "uniform"}};
        case Named::U:
            return {"U", Tree::blocks(2, parse_all({"00", "11"})), {"perfect", "balanced", "uniform", "not-silver"}};
        case Named::BST:
            return {"BST", staircase(kStaircaseDepth), {"perfect", "balanced", "not-uniform"}};
    }
    fail(ErrorKind::InvalidArgument, "unknown construction");
}

const Tree& named_tree(Named n) {
    static const std::vector<Tree> trees = [] {
        std::vector<Tree> out;
        for (Named m : all_named()) out.push_back(make_named(m).presentation);
        return out;
    }();
    return trees[static_cast<std::size_t>(n)];
}

std::vector<ClaimCheck> check_claims(const NamedConstruction& nc) {
    const Tree& t = nc.presentation;
    std::optional<Classification> cls;
    if (t.report().perfect) cls = classify(t, 64);
    std::vector<ClaimCheck> out;
    for (const std::string& claim : nc.expected_properties) {
        const bool negated = claim.rfind("not-", 0) == 0;
        const std::string base = negated ? claim.substr(4) : claim;
        bool value = false;
        if (base == "perfect") {
            value = t.report().perfect;
        } else if (cls && base == "balanced") {
            value = cls->balanced;
        } else if (cls && base == "uniform") {
            value = cls->uniform;
        } else if (cls && base == "silver") {
            value = cls->silver;
        } else {
            fail(ErrorKind::InvalidArgument, "unknown claim " + claim);
        }
        out.push_back({claim, value != negated});
    }
    return out;
}

std::vector<BinWord> project_blocks(const std::vector<BinWord>& blocks, std::span<const std::size_t> idx) {
    std::vector<BinWord> out;
    out.reserve(blocks.size());
    for (const BinWord& b : blocks) out.push_back(select(b, idx));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Table1Row> table1() {
    const Tree& q = named_tree(Named::Q);
    std::map<BinWord, std::size_t> fiber;
    for (const BinWord& s : blocks_J()) ++fiber[select(s, kEven)];
    const long total = static_cast<long>(blocks_J().size());
    std::vector<Table1Row> rows;
    for (const BinWord& s : blocks_J()) {
        Table1Row r;
        r.s = s;
        r.w = select(s, kEven);
        r.mu_q = mu_cylinder(q, r.w);
        r.fiber = fiber[r.w];
        r.fiber_measure = Rational(static_cast<long>(r.fiber), total);
        if (r.mu_q != r.fiber_measure) {
            fail(ErrorKind::Integrity, "table 1 row " + s.to_string() + ": mu_Q " + r.mu_q.to_string() +
                                           " but fiber " + r.fiber_measure.to_string());
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<Table2Row> table2() {
    const auto& l = blocks_L();
    std::vector<Table2Row> rows;
    for (const BinWord& s : blocks_J()) {
        BinWord w = select(s, kOdd);
        if (!std::binary_search(l.begin(), l.end(), w)) {
            fail(ErrorKind::Integrity, "table 2 row " + s.to_string() + " maps outside L");
        }
        rows.push_back({s, std::move(w)});
    }
    if (project_blocks(blocks_J(), kOdd) != l) fail(ErrorKind::Integrity, "odd projection of J is not L");
    return rows;
}

namespace {
constexpr std::size_t kPhiMaxLength = 24;
}

BinWord phi(const BinWord& w) {
    if (w.size() > kPhiMaxLength) {
        fail(ErrorKind::InvalidArgument, "phi is limited to words of length " + std::to_string(kPhiMaxLength));
    }
    BinWord out;
    for (std::size_t n = 0; n < w.size(); ++n) {
        const std::uint64_t k = w.prefix(n).to_integer();
        out = out.concat(BinWord::unit(std::size_t{2} << n, 2 * k + w[n]));
    }
    return out;
}

std::vector<BinWord> phi_level(std::size_t level) {
    if (level > 16) fail(ErrorKind::InvalidArgument, "phi level too large");
    std::vector<BinWord> out;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << level); ++v) out.push_back(phi(BinWord::from_integer(v, level)));
    return out;
}

bool z2_independent(const std::vector<BinWord>& words, std::size_t a, std::size_t b) {
    if (a > b) fail(ErrorKind::InvalidArgument, "window start after its end");
    for (const BinWord& w : words) {
        if (w.size() != words.front().size() || w.size() < b) {
            fail(ErrorKind::LengthMismatch, "words must share one length covering the window");
        }
    }
    const std::size_t width = b - a;
    const std::size_t limbs = (width + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows;
    for (const BinWord& w : words) {
        std::vector<std::uint64_t> row(limbs, 0);
        for (std::size_t i = 0; i < width; ++i) {
            if (w[a + i]) row[i / 64] |= std::uint64_t{1} << (i % 64);
        }
        rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
        const std::size_t limb = col / 64;
        const std::uint64_t bit = std::uint64_t{1} << (col % 64);
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot][limb] & bit)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && (rows[r][limb] & bit)) {
                for (std::size_t j = 0; j < limbs; ++j) rows[r][j] ^= rows[rank][j];
            }
        }
        ++rank;
    }
    return rank == rows.size();
}

namespace {

Rational covered_mass(const std::vector<NatWord>& nodes) {
    Rational s;
    for (const NatWord& w : nodes) s += baire_measure(w);
    return s;
}

}  // namespace

LusinTree lusin_tree(std::size_t stages, std::size_t cap) {
    LusinTree out;
    std::vector<NatWord> t{NatWord{}};
    for (std::size_t n = 0; n < stages; ++n) {
        LusinStage st;
        st.nodes = t;
        st.covered = covered_mass(t);
        const Rational scale = Rational(static_cast<long>(t.size())) * Rational::pow(Rational(2), n + 2);
        std::vector<NatWord> next;
        for (const NatWord& w : t) {
            const Rational target = scale * baire_measure(w);
            std::uint64_t m = 2;
            while (Rational::pow(Rational(2), m) < target) ++m;
            st.m.push_back(m);
            if (next.size() + m > cap) {
                fail(ErrorKind::CapExceeded, "Lusin stage " + std::to_string(n + 1) + " exceeds " +
                                                 std::to_string(cap) + " nodes");
            }
            for (std::uint64_t k = 0; k < m; ++k) next.push_back(w.append(k));
        }
        st.removed_mass = st.covered - covered_mass(next);
        if (st.removed_mass > Rational::dyadic(n + 2)) {
            fail(ErrorKind::Integrity, "Lusin stage " + std::to_string(n) + " removes " +
                                           st.removed_mass.to_string());
        }
        out.total_removed += st.removed_mass;
        out.stages.push_back(std::move(st));
        t = std::move(next);
    }
    out.last = std::move(t);
    return out;
}

}  // namespace pnull
