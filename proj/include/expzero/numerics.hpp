#pragma once

#include <map>
#include <string>

#include "expzero/complex_interval.hpp"
#include "expzero/epoly.hpp"
#include "expzero/term.hpp"

namespace expzero {

class EvalError : public std::runtime_error {
public:
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

// Rigorous enclosure of the term value with variables ranging over rectangles.
ComplexInterval eval_enclosure(const Term& t, const std::map<std::string, ComplexInterval>& env,
                               long bits);

// Enclosure at an exact rational point.
ComplexInterval eval_enclosure(const Term& t, const std::map<std::string, GaussianRational>& point,
                               long bits);

// Enclosure of a value in the exponential-constant ring.
ComplexInterval enclose(const ExpConstant& c, long bits);

// Exact value at a rational point: substitute, then canonicalize. Throws
// EvalError when a free variable is unbound.
ExpConstant eval_exact(const Term& t, const std::map<std::string, GaussianRational>& point);

enum class NonzeroKind { Zero, Nonzero, Inconclusive };

struct NonzeroVerdict {
    NonzeroKind kind;
    long bits = 0;  // proof precision for Nonzero
};

// Semi-decision for "value != 0": Zero iff structurally zero; Nonzero when an
// enclosure excludes zero within the doubling refinement schedule (32 bits up
// to max_bits); Inconclusive on budget exhaustion.
NonzeroVerdict certify_nonzero(const ExpConstant& c, long max_bits);

}  // namespace expzero
