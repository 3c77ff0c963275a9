#include "pnull/kernels.hpp"

#include <exception>

#include <omp.h>

namespace pnull::kernels {

namespace {

struct TraceFrame {
    StateId p;
    StateId x;
    std::uint32_t depth;
    std::uint32_t level;
};

struct ProductFrame {
    StateId pq;
    StateId p;
    StateId q;
    std::uint32_t depth;
    std::uint32_t l_pq;
    std::uint32_t l_p;
    std::uint32_t l_q;
};

using Histogram = std::vector<std::vector<std::uint64_t>>;

Histogram empty_histogram(std::size_t depth) {
    return Histogram(depth + 1, std::vector<std::uint64_t>(depth + 1, 0));
}

// Expands one node; `emit` receives the children.
template <class Emit>
void expand(const Automaton& pa, const Automaton& xa, const TraceFrame& f, Emit&& emit) {
    const std::uint8_t mask = pa.child_mask(f.p);
    const std::uint32_t level = f.level + (mask == 3 ? 1 : 0);
    for (Bit b = 0; b < 2; ++b) {
        if (!(mask & (1U << b))) continue;
        const StateId xt = xa.next(f.x, b);
        if (xt == kNoState) continue;
        emit(TraceFrame{pa.states[static_cast<std::size_t>(f.p)].next[b], xt, f.depth + 1, level});
    }
}

void trace_subtree(const Automaton& pa, const Automaton& xa, TraceFrame root, std::size_t depth, Histogram& h) {
    std::vector<TraceFrame> stack{root};
    while (!stack.empty()) {
        const TraceFrame f = stack.back();
        stack.pop_back();
        ++h[f.depth][f.level];
        if (f.depth == depth) continue;
        expand(pa, xa, f, [&](const TraceFrame& c) { stack.push_back(c); });
    }
}

template <class Emit>
void expand(const Automaton& pqa, const Automaton& pa, const Automaton& qa, const ProductFrame& f,
            std::uint64_t& mismatches, Emit&& emit) {
    const bool even = f.depth % 2 == 0;
    const Automaton& side = even ? pa : qa;
    const StateId s = even ? f.p : f.q;
    const std::uint8_t mask = pqa.child_mask(f.pq);
    if (mask != side.child_mask(s)) ++mismatches;
    const std::uint32_t l_pq = f.l_pq + (mask == 3 ? 1 : 0);
    const std::uint32_t step = side.splits(s) ? 1 : 0;
    for (Bit b = 0; b < 2; ++b) {
        if (!(mask & (1U << b))) continue;
        const StateId t = side.next(s, b);
        if (t == kNoState) continue;
        ProductFrame c = f;
        c.pq = pqa.states[static_cast<std::size_t>(f.pq)].next[b];
        c.depth = f.depth + 1;
        c.l_pq = l_pq;
        if (even) {
            c.p = t;
            c.l_p += step;
        } else {
            c.q = t;
            c.l_q += step;
        }
        emit(c);
    }
}

void product_subtree(const Automaton& pqa, const Automaton& pa, const Automaton& qa, ProductFrame root,
                     std::size_t depth, ProductCheck& out) {
    std::vector<ProductFrame> stack{root};
    while (!stack.empty()) {
        const ProductFrame f = stack.back();
        stack.pop_back();
        if (f.depth % 2 == 0) {
            ++out.nodes;
            if (f.l_pq != f.l_p + f.l_q) ++out.mismatches;
        }
        if (f.depth == depth) continue;
        expand(pqa, pa, qa, f, out.mismatches, [&](const ProductFrame& c) { stack.push_back(c); });
    }
}

constexpr std::size_t kFrontierTarget = 256;

// Runs body(i) for i < n in parallel. The first failure by index is
// rethrown so the error does not depend on scheduling.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
    std::vector<std::exception_ptr> errors(n);
    const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
    for (std::size_t i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

namespace serial {

LevelHistograms trace_histograms(const Tree& p, const Tree& x, std::size_t depth) {
    LevelHistograms out;
    out.counts = empty_histogram(depth);
    trace_subtree(p.automaton(), x.automaton(), {p.automaton().start, x.automaton().start, 0, 0}, depth,
                  out.counts);
    return out;
}

ProductCheck product_check(const Tree& p, const Tree& q, std::size_t depth) {
    const Tree pq = Tree::product(p, q);
    ProductCheck out;
    product_subtree(pq.automaton(), p.automaton(), q.automaton(),
                    {pq.automaton().start, p.automaton().start, q.automaton().start, 0, 0, 0, 0}, depth, out);
    return out;
}

}  // namespace serial

namespace parallel {

LevelHistograms trace_histograms(const Tree& p, const Tree& x, std::size_t depth, int threads) {
    const Automaton& pa = p.automaton();
    const Automaton& xa = x.automaton();
    LevelHistograms out;
    out.counts = empty_histogram(depth);
    // Breadth-first until the frontier is wide enough to share out; the
    // shallow layers are counted here.
    std::vector<TraceFrame> frontier{{pa.start, xa.start, 0, 0}};
    while (frontier.size() < kFrontierTarget && !frontier.empty() && frontier.front().depth < depth) {
        std::vector<TraceFrame> next;
        for (const TraceFrame& f : frontier) {
            ++out.counts[f.depth][f.level];
            expand(pa, xa, f, [&](const TraceFrame& c) { next.push_back(c); });
        }
        frontier = std::move(next);
    }
    std::vector<Histogram> partial(frontier.size());
    parallel_for(frontier.size(), threads, [&](std::size_t i) {
        partial[i] = empty_histogram(depth);
        trace_subtree(pa, xa, frontier[i], depth, partial[i]);
    });
    for (const Histogram& h : partial) {
        for (std::size_t d = 0; d <= depth; ++d) {
            for (std::size_t l = 0; l <= depth; ++l) out.counts[d][l] += h[d][l];
        }
    }
    return out;
}

ProductCheck product_check(const Tree& p, const Tree& q, std::size_t depth, int threads) {
    const Tree pq = Tree::product(p, q);
    const Automaton& pqa = pq.automaton();
    const Automaton& pa = p.automaton();
    const Automaton& qa = q.automaton();
    ProductCheck out;
    std::vector<ProductFrame> frontier{{pqa.start, pa.start, qa.start, 0, 0, 0, 0}};
    while (frontier.size() < kFrontierTarget && !frontier.empty() && frontier.front().depth < depth) {
        std::vector<ProductFrame> next;
        for (const ProductFrame& f : frontier) {
            if (f.depth % 2 == 0) {
                ++out.nodes;
                if (f.l_pq != f.l_p + f.l_q) ++out.mismatches;
            }
            expand(pqa, pa, qa, f, out.mismatches, [&](const ProductFrame& c) { next.push_back(c); });
        }
        frontier = std::move(next);
    }
    std::vector<ProductCheck> partial(frontier.size());
    parallel_for(frontier.size(), threads,
                 [&](std::size_t i) { product_subtree(pqa, pa, qa, frontier[i], depth, partial[i]); });
    for (const ProductCheck& c : partial) {
        out.nodes += c.nodes;
        out.mismatches += c.mismatches;
    }
    return out;
}

}  // namespace parallel

}  // namespace pnull::kernels
