#include <exception>
#include <sstream>

#include <omp.h>

#include "pnull/certificate.hpp"
#include "pnull/constructions.hpp"
#include "pnull/dsl.hpp"
#include "pnull/kernels.hpp"
#include "pnull/measure.hpp"
#include "pnull/splits.hpp"

namespace pnull::dsl {

namespace {

constexpr std::size_t kDefaultClassifyDepth = 64;
constexpr std::size_t kDefaultProductDepth = 12;

struct Env {
    std::map<std::string, Tree> trees;
    std::map<std::string, std::string> rejected;  // name -> reason
    RunOptions options;

    const Tree& get(const std::string& name) const {
        if (auto r = rejected.find(name); r != rejected.end()) {
            fail(ErrorKind::InvalidPresentation, "tree " + name + " was rejected: " + r->second);
        }
        if (auto it = trees.find(name); it != trees.end()) return it->second;
        if (auto n = named_from_string(name)) return named_tree(*n);
        fail(ErrorKind::InvalidArgument, "unknown tree " + name);
    }

    void check_depth(std::size_t depth) const {
        if (depth > options.max_depth) {
            fail(ErrorKind::CapExceeded,
                 "depth " + std::to_string(depth) + " exceeds --max-depth " + std::to_string(options.max_depth));
        }
    }
};

void add_bounds(QueryReport& r, const TraceResult& t) {
    for (std::size_t d = 0; d < t.upper_bounds.size(); ++d) {
        r.lines.push_back("depth " + std::to_string(d) + ": " + t.upper_bounds[d].to_string());
    }
}

void run_query(const Query& q, const Env& env, QueryReport& r) {
    switch (q.kind) {
        case QueryKind::Classify: {
            const std::size_t depth = q.depth.value_or(kDefaultClassifyDepth);
            env.check_depth(depth);
            const Classification c = classify(env.get(q.names[0]), depth);
            r.lines.push_back(c.summary());
            if (c.exact && c.period) {
                r.lines.push_back("period from depth " + std::to_string(*c.period_start) + ", length " +
                                  std::to_string(*c.period));
            }
            std::string lengths = "all-splitting lengths:";
            for (std::size_t n : c.splitting_lengths) lengths += " " + std::to_string(n);
            r.lines.push_back(lengths);
            break;
        }
        case QueryKind::Measure: {
            const Tree& t = env.get(q.names[0]);
            r.lines.push_back("= " + mu_cylinder(t, q.word).to_string());
            break;
        }
        case QueryKind::Trace: {
            const Tree& x = env.get(q.names[0]);
            const Tree& p = env.get(q.names[1]);
            const std::size_t depth = q.depth.value_or(default_trace_depth(p, x));
            env.check_depth(depth);
            add_bounds(r, trace_upper(p, x, depth));
            r.lines.push_back("method depth-bounded");
            break;
        }
        case QueryKind::TraceExact: {
            const Tree& x = env.get(q.names[0]);
            const Tree& p = env.get(q.names[1]);
            try {
                const TraceResult t = trace_exact(p, x);
                r.lines.push_back("= " + t.exact->to_string());
                r.lines.push_back("method exact-solve");
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Unsupported) throw;
                r.lines.push_back("exact solve unsupported: " + std::string(e.what()));
                add_bounds(r, trace_upper(p, x, default_trace_depth(p, x)));
                r.lines.push_back("method depth-bounded");
            }
            break;
        }
        case QueryKind::Lemma1: {
            const Tree& x = env.get(q.names[0]);
            const Tree& p = env.get(q.names[1]);
            env.check_depth(q.k * q.count);
            const BoundCertificate cert = lemma1_refine(p, x, q.k, q.count);
            check_certificate(p, x, cert);
            for (std::size_t i = 0; i < cert.replay_log.size(); ++i) {
                r.lines.push_back("round " + std::to_string(i) + ": " + std::to_string(cert.replay_log[i].count) +
                                  " nodes, mass " + cert.replay_log[i].mass.to_string());
            }
            r.lines.push_back("bound " + cert.bound.to_string());
            r.lines.push_back("formula " + lemma1_formula(q.k, q.count).to_string());
            r.lines.push_back("replay ok");
            r.certificate = serialize(cert);
            break;
        }
        case QueryKind::Table1: {
            r.lines.push_back("s w mu_Q fiber");
            for (const Table1Row& row : table1()) {
                r.lines.push_back(row.s.to_string() + " " + row.w.to_string() + " " + row.mu_q.to_string() + " " +
                                  std::to_string(row.fiber) + "/16");
            }
            break;
        }
        case QueryKind::Table2: {
            for (const Table2Row& row : table2()) r.lines.push_back(row.s.to_string() + " -> " + row.w.to_string());
            r.lines.push_back("projection onto odd positions = L");
            break;
        }
        case QueryKind::Phi: {
            r.lines.push_back("= " + phi(q.word).to_string());
            break;
        }
        case QueryKind::Lusin: {
            const LusinTree t = lusin_tree(q.count);
            for (std::size_t n = 0; n < t.stages.size(); ++n) {
                const LusinStage& s = t.stages[n];
                std::string line = "stage " + std::to_string(n) + ": " + std::to_string(s.nodes.size()) +
                                   " nodes, removed " + s.removed_mass.to_string();
                if (n == 0) line += ", M(ε) = " + std::to_string(s.m.front());
                r.lines.push_back(line);
            }
            r.lines.push_back("total removed " + t.total_removed.to_string());
            break;
        }
        case QueryKind::ProductCheck: {
            const std::size_t depth = q.depth.value_or(kDefaultProductDepth);
            env.check_depth(depth);
            const kernels::ProductCheck c =
                kernels::parallel::product_check(env.get(q.names[0]), env.get(q.names[1]), depth, 1);
            r.lines.push_back(std::to_string(c.nodes) + " nodes, " + std::to_string(c.mismatches) + " mismatches");
            if (c.mismatches) fail(ErrorKind::Integrity, "product measure identity fails");
            break;
        }
    }
}

}  // namespace

Report run(const Script& script, const RunOptions& options) {
    Report report;
    Env env;
    env.options = options;
    for (Named n : all_named()) named_tree(n);

    for (const Declaration& d : script.declarations) {
        std::string line = "tree " + d.name + " = " + pretty(d.expr) + ": ";
        try {
            Tree t = build(d.expr, env.trees);
            line += t.report().summary();
            env.trees.emplace(d.name, std::move(t));
        } catch (const Error& e) {
            line += "rejected (" + std::string(to_string(e.kind())) + "): " + e.what();
            env.rejected.emplace(d.name, e.what());
            report.presentation_invalid = true;
        }
        report.declarations.push_back(std::move(line));
    }

    const std::size_t n = script.queries.size();
    report.queries.resize(n);
    const int team = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
    for (std::size_t i = 0; i < n; ++i) {
        const Query& q = script.queries[i];
        QueryReport& r = report.queries[i];
        r.echo = pretty(q);
        try {
            run_query(q, env, r);
        } catch (const Error& e) {
            r.lines.clear();
            r.error = e.kind();
            r.message = e.what();
        } catch (const std::exception& e) {
            r.lines.clear();
            r.error = ErrorKind::Integrity;
            r.message = e.what();
        }
    }
    return report;
}

int Report::exit_code() const {
    if (presentation_invalid) return 2;
    for (const QueryReport& q : queries) {
        if (q.error) return 3;
    }
    return 0;
}

std::string Report::render() const {
    std::ostringstream os;
    for (const std::string& d : declarations) os << d << '\n';
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const QueryReport& q = queries[i];
        os << "query " << i + 1 << ": " << q.echo << '\n';
        for (const std::string& l : q.lines) os << "  " << l << '\n';
        if (q.error) {
            os << "  status error(" << to_string(*q.error) << "): " << q.message << '\n';
        } else {
            os << "  status ok\n";
        }
    }
    return os.str();
}

std::string Report::certificates() const {
    std::string out;
    for (const QueryReport& q : queries) {
        if (q.certificate) out += *q.certificate;
    }
    return out;
}

}  // namespace pnull::dsl
