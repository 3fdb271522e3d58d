#pragma once

#include "expzero/zerofree.hpp"

namespace expzero {

// One member of the countable boolean combination: for a candidate Q, the
// conjunction of the rational-witness conditions; index 0 is the standalone
// universal clause "P vanishes on all rational tuples".
struct Clause {
    unsigned index = 0;
    std::optional<Term> q;          // absent for the identically-zero clause
    Term p;
    std::vector<std::string> x_vars, y_vars;
    std::vector<Term> numerators;   // flatness numerators over the y names
    std::string rendered;
};

Clause make_identically_zero_clause(const Term& p, const std::vector<std::string>& x_vars,
                                    const std::vector<std::string>& y_vars);
Clause make_q_clause(const Term& p, const std::vector<std::string>& x_vars,
                     const std::vector<std::string>& y_vars, unsigned index, const Term& q);

// Deterministic, restartable stream: index 0 is the identically-zero clause,
// clause k >= 1 corresponds to the k-th enumerated candidate Q.
class ClauseStream {
public:
    ClauseStream(Term p, std::vector<std::string> x_vars, std::vector<std::string> y_vars,
                 unsigned max_weight, unsigned from_index = 0,
                 std::vector<GaussianRational> extra_constants = {});
    std::optional<Clause> next();

private:
    Term p_;
    std::vector<std::string> x_vars_, y_vars_;
    TermEnumerator candidates_;
    unsigned index_ = 0;
    unsigned from_index_;
};

enum class ClauseVerdict { Holds, Fails, Unknown };

// Evaluates the clause at the point: the existential part by certified
// rational witness search, the universal part by the structural zero test,
// with failures certified by a nonzero rational sample where possible.
ClauseVerdict clause_holds(const Clause& clause, const std::vector<GaussianRational>& point,
                           const SearchBudget& budget);

// Structure of a rendered clause, for re-parsing and external tooling.
struct ClauseFormula {
    struct Atom {
        bool existential;                 // E vs A
        std::vector<std::string> qvars;
        unsigned arity;                   // the m of Q^m
        Term body;
        bool nonzero;                     // body != 0 vs body = 0
    };
    std::vector<Atom> atoms;  // conjuncts
};

ClauseFormula parse_clause_formula(const std::string& text);

}  // namespace expzero
