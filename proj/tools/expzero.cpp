#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "expzero/certificate.hpp"
#include "expzero/clauses.hpp"

namespace {

using namespace expzero;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    if (text.empty() || text == "-") return out;
    size_t pos = 0;
    while (pos != std::string::npos) {
        size_t comma = text.find(',', pos);
        out.push_back(text.substr(pos, comma == std::string::npos ? comma : comma - pos));
        pos = comma == std::string::npos ? comma : comma + 1;
    }
    return out;
}

std::vector<GaussianRational> parse_point(const std::string& text,
                                          const std::vector<std::string>& x_vars) {
    std::map<std::string, GaussianRational> named;
    for (const auto& chunk : split_list(text)) {
        size_t eq = chunk.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--at expects name=value, got: " + chunk);
        named.emplace(chunk.substr(0, eq), GaussianRational::parse(chunk.substr(eq + 1)));
    }
    if (named.size() != x_vars.size())
        throw std::invalid_argument("--at must assign exactly the x variables");
    std::vector<GaussianRational> out;
    for (const auto& x : x_vars) {
        auto it = named.find(x);
        if (it == named.end()) throw std::invalid_argument("--at is missing " + x);
        out.push_back(it->second);
    }
    return out;
}

void add_budget_flags(CLI::App* cmd, SearchBudget& budget) {
    cmd->add_option("--max-weight", budget.max_weight, "candidate term weight cap");
    cmd->add_option("--max-height", budget.max_height, "rational tuple height cap");
    cmd->add_option("--bits", budget.max_bits, "working precision ceiling in bits");
    cmd->add_option("--timeout", budget.timeout_seconds, "wall clock cap in seconds");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expzero: zero-freeness and zero certification for exponential polynomials"};
    app.require_subcommand(1);

    std::string term_text, var, x_list, y_list, at_text, file, consts_text;
    unsigned max_weight = 4, from_index = 0, limit = 0, threads = 1;
    SearchBudget budget;

    auto* parse_cmd = app.add_subcommand("parse", "parse a term and echo its normalized form");
    parse_cmd->add_option("term", term_text)->required();

    auto* canon_cmd = app.add_subcommand("canon", "canonical normal form of a term");
    canon_cmd->add_option("term", term_text)->required();
    bool show_regime = false;
    canon_cmd->add_flag("--regime", show_regime,
                        "also print the regime of structural nonzero verdicts");

    auto* diff_cmd = app.add_subcommand("diff", "partial derivative of a term");
    diff_cmd->add_option("--var", var, "variable to differentiate by")->required();
    diff_cmd->add_option("term", term_text)->required();

    auto* decide_cmd = app.add_subcommand("decide", "decide membership of a point");
    decide_cmd->add_option("--term", term_text)->required();
    decide_cmd->add_option("--x", x_list, "comma-separated x variables");
    decide_cmd->add_option("--y", y_list, "comma-separated y variables")->required();
    decide_cmd->add_option("--at", at_text, "point assignment, e.g. x=0 or x1=1,x2=1/2i");
    decide_cmd->add_option("--threads", threads, "worker threads (never changes the verdict)");
    decide_cmd->add_option("--consts", consts_text,
                           "extra candidate constants, e.g. 2,1/2,1i");
    add_budget_flags(decide_cmd, budget);

    auto* clauses_cmd = app.add_subcommand("clauses", "stream the boolean-combination clauses");
    clauses_cmd->add_option("--term", term_text)->required();
    clauses_cmd->add_option("--x", x_list);
    clauses_cmd->add_option("--y", y_list)->required();
    clauses_cmd->add_option("--max-weight", max_weight, "candidate term weight cap");
    clauses_cmd->add_option("--consts", consts_text,
                            "extra candidate constants, e.g. 2,1/2,1i");
    clauses_cmd->add_option("--from-index", from_index, "restart the stream from this clause");
    clauses_cmd->add_option("--limit", limit, "stop after this many clauses (0: no limit)");

    auto* verify_cmd = app.add_subcommand("verify", "replay a certificate file");
    verify_cmd->add_option("file", file)->required();
    add_budget_flags(verify_cmd, budget);

    CLI11_PARSE(app, argc, argv);

    try {
        if (parse_cmd->parsed()) {
            std::cout << print(parse(term_text)) << "\n";
            return 0;
        }
        if (canon_cmd->parsed()) {
            EPoly e = canonicalize(parse(term_text));
            std::cout << print(to_term(e)) << "\n";
            if (show_regime)
                std::cout << "regime "
                          << (zero_test_regime(e) == ZeroTestRegime::Unconditional
                                  ? "unconditional"
                                  : "schanuel-conditional")
                          << "\n";
            return 0;
        }
        if (diff_cmd->parsed()) {
            std::cout << print(to_term(derivative(canonicalize(parse(term_text)), var))) << "\n";
            return 0;
        }
        if (decide_cmd->parsed()) {
            Precision precision(budget.max_bits);  // validates the bit count
            for (const auto& c : split_list(consts_text))
                budget.extra_constants.push_back(GaussianRational::parse(c));
            Term p = parse(term_text);
            auto x_vars = split_list(x_list);
            auto y_vars = split_list(y_list);
            auto point = parse_point(at_text, x_vars);
            Verdict verdict = decide_membership(p, x_vars, point, y_vars, budget, threads);
            std::cout << render_verdict(verdict, p, x_vars, point, y_vars, budget);
            return verdict.kind == VerdictKind::Unknown ? 2 : 0;
        }
        if (clauses_cmd->parsed()) {
            std::vector<GaussianRational> extra;
            for (const auto& c : split_list(consts_text)) extra.push_back(GaussianRational::parse(c));
            Term p = parse(term_text);
            ClauseStream stream(p, split_list(x_list), split_list(y_list), max_weight, from_index,
                                std::move(extra));
            unsigned emitted = 0;
            while (auto clause = stream.next()) {
                std::cout << "CLAUSE " << clause->index << " "
                          << (clause->q ? "Q=" + print(*clause->q) : std::string("IDZERO"))
                          << " :: " << clause->rendered << "\n";
                if (limit && ++emitted >= limit) break;
            }
            return 0;
        }
        if (verify_cmd->parsed()) {
            Precision precision(budget.max_bits);
            std::ifstream in(file);
            if (!in) {
                std::cerr << "cannot open " << file << "\n";
                return 1;
            }
            std::ostringstream buffer;
            buffer << in.rdbuf();
            std::string why;
            if (verify_certificate(buffer.str(), budget, &why)) {
                std::cout << "VALID\n";
                return 0;
            }
            std::cout << "INVALID " << why << "\n";
            return 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
