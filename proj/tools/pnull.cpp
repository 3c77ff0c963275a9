// pnull: run a tree script, or replay certificates written by an earlier run.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pnull/certificate.hpp"
#include "pnull/dsl.hpp"

namespace {

std::string slurp(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool read_input(const std::string& path, std::string& out) {
    if (path.empty() || path == "-") {
        out = slurp(std::cin);
        return true;
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) return false;
    out = slurp(f);
    return true;
}

int check_certificates(const std::string& path) {
    std::string text;
    if (!read_input(path, text)) {
        std::cerr << "pnull: cannot read " << path << '\n';
        return 1;
    }
    std::vector<pnull::BoundCertificate> certs;
    try {
        certs = pnull::parse_certificates(text);
    } catch (const pnull::Error& e) {
        std::cerr << "pnull: " << e.what() << '\n';
        return 1;
    }
    int status = 0;
    const std::map<std::string, pnull::Tree> none;
    for (std::size_t i = 0; i < certs.size(); ++i) {
        const auto& c = certs[i];
        try {
            const pnull::Tree p = pnull::dsl::build(pnull::dsl::parse_tree_expr(c.host), none);
            const pnull::Tree x = pnull::dsl::build(pnull::dsl::parse_tree_expr(c.target), none);
            pnull::check_certificate(p, x, c);
            std::cout << "certificate " << i + 1 << ": ok, " << c.cover.size() << " entries, bound " << c.bound
                      << '\n';
        } catch (const pnull::Error& e) {
            std::cout << "certificate " << i + 1 << ": error(" << pnull::to_string(e.kind()) << "): " << e.what()
                      << '\n';
            status = 3;
        }
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact measures on finitely presented perfect trees"};
    std::string script_path;
    std::string certs_path;
    std::string check_path;
    std::size_t max_depth = 256;
    int threads = 0;
    app.add_option("script", script_path, "Script file (stdin when absent or '-')");
    app.add_option("--certs", certs_path, "Write lemma1 certificates to this file");
    app.add_option("--max-depth", max_depth, "Refuse queries deeper than this")->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "Worker threads for query evaluation")->check(CLI::NonNegativeNumber);
    app.add_option("--check-cert", check_path, "Replay a certificate file and exit");
    CLI11_PARSE(app, argc, argv);

    if (!check_path.empty()) return check_certificates(check_path);

    std::string text;
    if (!read_input(script_path, text)) {
        std::cerr << "pnull: cannot read " << script_path << '\n';
        return 1;
    }
    pnull::dsl::Script script;
    try {
        script = pnull::dsl::parse(text);
    } catch (const pnull::Error& e) {
        std::cerr << "pnull: parse error, " << e.what() << '\n';
        return 1;
    }
    const pnull::dsl::Report report = pnull::dsl::run(script, {max_depth, threads});
    std::cout << report.render();
    if (!certs_path.empty()) {
        std::ofstream f(certs_path, std::ios::binary);
        if (!f) {
            std::cerr << "pnull: cannot write " << certs_path << '\n';
            return 3;
        }
        f << report.certificates();
    }
    return report.exit_code();
}
