#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "expzero/gaussian.hpp"

namespace expzero {

enum class TermKind { Const, Var, Add, Mul, Neg, Exp };

// Immutable syntax tree over {+, *, -, exp} with Gaussian-rational constants
// and named variables. Nodes are shared; copying a Term is cheap.
class Term {
public:
    Term() : Term(constant(GaussianRational())) {}

    static Term constant(GaussianRational value);
    static Term variable(std::string name);
    static Term add(Term lhs, Term rhs);
    static Term mul(Term lhs, Term rhs);
    static Term neg(Term operand);
    static Term exp(Term operand);
    // Convenience: lhs + neg(rhs).
    static Term sub(Term lhs, Term rhs) { return add(std::move(lhs), neg(std::move(rhs))); }

    TermKind kind() const { return node_->kind; }
    const GaussianRational& value() const { return node_->value; }  // Const only
    const std::string& name() const { return node_->name; }        // Var only
    Term lhs() const { return Term(node_->lhs); }                  // Add/Mul/Neg/Exp
    Term rhs() const { return Term(node_->rhs); }                  // Add/Mul only

    bool operator==(const Term& o) const { return compare(*this, o) == 0; }
    bool operator!=(const Term& o) const { return compare(*this, o) != 0; }

    // Total structural order: weight first, then node kind, then fields.
    static int compare(const Term& a, const Term& b);
    bool operator<(const Term& o) const { return compare(*this, o) < 0; }

    // Node count plus the bit sizes of all constants.
    unsigned weight() const { return node_->weight; }

private:
    struct Node {
        TermKind kind;
        GaussianRational value;
        std::string name;
        std::shared_ptr<const Node> lhs, rhs;
        unsigned weight = 0;
    };
    using NodePtr = std::shared_ptr<const Node>;

    explicit Term(NodePtr node) : node_(std::move(node)) {}
    NodePtr node_;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)),
          position_(position) {}
    size_t position() const { return position_; }

private:
    size_t position_;
};

// Grammar (ASCII):
//   term := sum
//   sum  := prod (('+'|'-') prod)*          '-' desugars to Add(lhs, Neg(rhs))
//   prod := unary ('*' unary)*
//   unary := '-' unary | atom
//   atom := const | ident | 'exp' '(' term ')' | '(' term ')'
//   const := rational | rational 'i' | '(' rational ('+'|'-') rational 'i' ')'
//   rational := integer ('/' positive-integer)?
// Identifiers: [a-zA-Z_][a-zA-Z0-9_]*, excluding the keyword exp.
Term parse(const std::string& text);

// Inverse of parse up to whitespace and redundant parentheses:
// parse(print(t)) is structurally equal to t.
std::string print(const Term& t);

std::set<std::string> free_vars(const Term& t);

// Simultaneous replacement of variables; unbound variables pass through.
Term substitute(const Term& t, const std::map<std::string, Term>& binding);
Term substitute(const Term& t, const std::map<std::string, GaussianRational>& values);

// Constants appearing in the term, in first-occurrence order.
std::vector<GaussianRational> constants_of(const Term& t);

// Bit-size contribution of a constant to a term's weight. Zero for 0, 1, -1,
// i and other single-bit values.
unsigned gr_bitsize(const GaussianRational& g);

}  // namespace expzero
