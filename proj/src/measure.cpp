#include "pnull/measure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <variant>

#include "pnull/error.hpp"
#include "pnull/pair_automaton.hpp"
#include "pnull/splits.hpp"

namespace pnull {

Rational mu_cylinder(const Tree& tree, const BinWord& w) {
    const Automaton& a = tree.automaton();
    StateId s = a.start;
    std::size_t lvl = 0;
    for (Bit b : w.bits()) {
        if (a.splits(s)) ++lvl;
        s = a.next(s, b);
        if (s == kNoState) return Rational(0);
    }
    return Rational::dyadic(lvl);
}

Rational mu_clopen(const Tree& tree, const std::vector<BinWord>& words) {
    std::vector<BinWord> sorted = words;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    // In lexicographic order a word's extensions follow it directly.
    Rational total;
    const BinWord* kept = nullptr;
    for (const BinWord& w : sorted) {
        if (kept && kept->is_prefix_of(w)) continue;
        total += mu_cylinder(tree, w);
        kept = &w;
    }
    return total;
}

TraceResult trace_upper(const Tree& p, const Tree& x, std::size_t depth) {
    const Automaton& pa = p.automaton();
    const Automaton& xa = x.automaton();
    TraceResult result;
    result.method = TraceMethod::DepthBounded;
    std::map<std::pair<StateId, StateId>, Rational> mass{{{pa.start, xa.start}, Rational(1)}};
    result.upper_bounds.push_back(Rational(1));
    const Rational half(1, 2);
    for (std::size_t d = 0; d < depth; ++d) {
        std::map<std::pair<StateId, StateId>, Rational> next;
        Rational total;
        for (const auto& [key, m] : mass) {
            const auto [ps, xs] = key;
            const std::uint8_t mask = pa.child_mask(ps);
            const Rational share = mask == 3 ? m * half : m;
            for (Bit b = 0; b < 2; ++b) {
                if (!(mask & (1U << b))) continue;
                const StateId xt = xa.next(xs, b);
                if (xt == kNoState) continue;
                next[{pa.states[static_cast<std::size_t>(ps)].next[b], xt}] += share;
                total += share;
            }
        }
        mass = std::move(next);
        result.upper_bounds.push_back(total);
    }
    return result;
}

namespace {

struct Periodicity {
    std::size_t offset = 0;
    std::size_t period = 1;
};

Periodicity periodicity(const Tree& t) {
    struct Visitor {
        Periodicity operator()(const FullSpec&) const { return {0, 1}; }
        Periodicity operator()(const ExplicitSpec&) const { return {0, 1}; }
        Periodicity operator()(const BlockSpec& s) const { return {0, s.k}; }
        Periodicity operator()(const SilverSpec& s) const { return {s.prefix.size(), s.period.size()}; }
        Periodicity operator()(const ProductSpec& s) const {
            const Periodicity l = periodicity(s.left), r = periodicity(s.right);
            return {2 * std::max(l.offset, r.offset), 2 * std::lcm(l.period, r.period)};
        }
        Periodicity operator()(const SubtreeSpec& s) const {
            const Periodicity b = periodicity(s.base);
            return {std::max(b.offset, s.root.size()), b.period};
        }
    };
    return std::visit(Visitor{}, t.spec().value);
}

constexpr std::size_t kDefaultDepthCap = 60;

}  // namespace

std::size_t default_trace_depth(const Tree& p, const Tree& x) {
    const Periodicity pp = periodicity(p), xp = periodicity(x);
    const std::size_t lcm = std::lcm(pp.period, xp.period);
    std::size_t depth = std::max(pp.offset, xp.offset) + 3 * lcm * lcm;
    depth = std::min(depth, kDefaultDepthCap);
    for (const Tree* t : {&p, &x}) {
        if (t->report().horizon) depth = std::min(depth, *t->report().horizon);
    }
    return depth;
}

namespace {

// Dense Gauss-Jordan over the rationals; `m` is n x (n+1) augmented.
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) fail(ErrorKind::Integrity, "singular survival system");
        std::swap(m[col], m[pivot]);
        const Rational inv = Rational(1) / m[col][col];
        for (std::size_t j = col; j <= n; ++j) m[col][j] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col].is_zero()) continue;
            const Rational f = m[r][col];
            for (std::size_t j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return x;
}

std::vector<bool> backward_closure(const PairAutomaton& g, std::vector<bool> seed) {
    std::vector<std::vector<std::int32_t>> preds(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::int32_t j : g.next[i]) {
            if (j >= 0) preds[static_cast<std::size_t>(j)].push_back(static_cast<std::int32_t>(i));
        }
    }
    std::deque<std::int32_t> queue;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (seed[i]) queue.push_back(static_cast<std::int32_t>(i));
    }
    while (!queue.empty()) {
        const std::int32_t j = queue.front();
        queue.pop_front();
        for (std::int32_t i : preds[static_cast<std::size_t>(j)]) {
            if (!seed[static_cast<std::size_t>(i)]) {
                seed[static_cast<std::size_t>(i)] = true;
                queue.push_back(i);
            }
        }
    }
    return seed;
}

}  // namespace

TraceResult trace_exact(const Tree& p, const Tree& x) {
    if (!p.report().exact || !x.report().exact) {
        fail(ErrorKind::Unsupported, "exact trace needs finite-state presentations without a horizon");
    }
    const PairAutomaton g = PairAutomaton::build(p.automaton(), x.automaton(), false);
    const std::size_t n = g.size();

    // A pair can lose mass if some P-child leaves T_X, now or later.
    std::vector<bool> loses(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        for (Bit b = 0; b < 2; ++b) {
            if ((g.p_mask[i] & (1U << b)) && g.next[i][b] < 0) loses[i] = true;
        }
    }
    loses = backward_closure(g, loses);
    // Pairs that never lose mass keep all of it; the measure is the
    // probability of reaching them.
    std::vector<bool> safe(n);
    for (std::size_t i = 0; i < n; ++i) safe[i] = !loses[i];
    const std::vector<bool> reaches_safe = backward_closure(g, safe);

    std::vector<std::int32_t> unknown_index(n, -1);
    std::vector<std::size_t> unknowns;
    for (std::size_t i = 0; i < n; ++i) {
        if (loses[i] && reaches_safe[i]) {
            unknown_index[i] = static_cast<std::int32_t>(unknowns.size());
            unknowns.push_back(i);
        }
    }

    TraceResult result;
    result.method = TraceMethod::ExactSolve;
    auto value_of_known = [&](std::size_t i) { return safe[i] ? Rational(1) : Rational(0); };
    if (unknown_index[0] < 0) {
        result.exact = value_of_known(0);
        return result;
    }
    const std::size_t m = unknowns.size();
    std::vector<std::vector<Rational>> sys(m, std::vector<Rational>(m + 1));
    const Rational half(1, 2);
    for (std::size_t r = 0; r < m; ++r) {
        const std::size_t i = unknowns[r];
        sys[r][r] += Rational(1);
        const Rational w = g.p_splits[i] ? half : Rational(1);
        for (Bit b = 0; b < 2; ++b) {
            const std::int32_t j = g.next[i][b];
            if (j < 0) continue;
            const auto ju = static_cast<std::size_t>(j);
            if (unknown_index[ju] >= 0) {
                sys[r][static_cast<std::size_t>(unknown_index[ju])] -= w;
            } else {
                sys[r][m] += w * value_of_known(ju);
            }
        }
    }
    const std::vector<Rational> v = solve_linear(std::move(sys));
    result.exact = v[static_cast<std::size_t>(unknown_index[0])];
    return result;
}

Rational product_measure(const Tree& p, const Tree& q, const BinWord& v) {
    return product_measure(Tree::product(p, q), v);
}

Rational product_measure(const Tree& pq, const BinWord& v) {
    const auto* spec = std::get_if<ProductSpec>(&pq.spec().value);
    if (!spec) fail(ErrorKind::InvalidArgument, "product_measure needs a product presentation");
    const Tree& p = spec->left;
    const Tree& q = spec->right;
    if (v.size() % 2 != 0) fail(ErrorKind::InvalidArgument, "product cylinder needs an even-length word");
    if (pq.automaton().run(v) == kNoState) {
        fail(ErrorKind::NotANode, v.to_string() + " is not a node of the product tree");
    }
    const Rational direct = Rational::dyadic(level(pq, v));
    const auto [wp, wq] = deinterleave(v);
    const Rational factored = mu_cylinder(p, wp) * mu_cylinder(q, wq);
    if (direct != factored) {
        fail(ErrorKind::Integrity, "product measure mismatch at " + v.to_string() + ": " +
                                       direct.to_string() + " vs " + factored.to_string());
    }
    return direct;
}

Rational baire_measure(const NatWord& w) {
    std::uint64_t exponent = 0;
    for (std::uint64_t e : w.entries()) exponent += e + 1;
    return Rational::dyadic(exponent);
}

}  // namespace pnull
