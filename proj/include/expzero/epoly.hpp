#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expzero/term.hpp"

namespace expzero {

// Value in the formal exponential-constant ring: a finite sum
// q_1*e^(g_1) + ... + q_n*e^(g_n) with Gaussian-rational q's and ExpConstant
// exponents g, subject to e^a * e^b = e^(a+b) and e^0 = 1. Zero is the empty
// sum. These are exactly the variable-free canonical EPolys, so the same type
// serves as the coefficient ring of EPoly.
class ExpConstant {
public:
    struct Entry;

    ExpConstant() = default;  // zero
    static ExpConstant rational(GaussianRational q);
    static ExpConstant one() { return rational(GaussianRational(1)); }
    static ExpConstant exp_of(const ExpConstant& c);  // the value e^c

    bool is_zero() const { return entries_.empty(); }
    bool is_rational() const;
    std::optional<GaussianRational> as_rational() const;

    ExpConstant operator+(const ExpConstant& o) const;
    ExpConstant operator-() const;
    ExpConstant operator-(const ExpConstant& o) const { return *this + (-o); }
    ExpConstant operator*(const ExpConstant& o) const;
    ExpConstant operator*(const GaussianRational& q) const;

    static int compare(const ExpConstant& a, const ExpConstant& b);
    bool operator==(const ExpConstant& o) const { return compare(*this, o) == 0; }
    bool operator!=(const ExpConstant& o) const { return compare(*this, o) != 0; }
    bool operator<(const ExpConstant& o) const { return compare(*this, o) < 0; }

    const std::vector<Entry>& entries() const { return entries_; }

    // True when every exponent occurring in the sum is a plain Gaussian
    // rational. Structural-nonzero verdicts are then unconditional by
    // Lindemann-Weierstrass; with nested exponents they are conditional on
    // Schanuel-type independence.
    bool plain_rational_exponents() const;

    void check_invariants() const;

private:
    static ExpConstant from_sorted(std::vector<Entry> entries);
    std::vector<Entry> entries_;  // sorted by key, no zero coefficients
};

struct ExpConstant::Entry {
    ExpConstant key;  // gamma: the entry denotes coeff * e^gamma
    GaussianRational coeff;
};

// Multiset of variables with positive integer exponents; the empty monomial
// is the unit.
class Monomial {
public:
    Monomial() = default;
    static Monomial var(const std::string& name, unsigned power = 1);

    bool is_unit() const { return exps_.empty(); }
    unsigned degree(const std::string& name) const;
    unsigned total_degree() const;
    const std::map<std::string, unsigned>& exponents() const { return exps_; }

    Monomial operator*(const Monomial& o) const;
    // Removes one power of name; pre: degree(name) > 0.
    Monomial reduce(const std::string& name) const;

    static int compare(const Monomial& a, const Monomial& b);
    bool operator==(const Monomial& o) const { return compare(*this, o) == 0; }
    bool operator<(const Monomial& o) const { return compare(*this, o) < 0; }

private:
    std::map<std::string, unsigned> exps_;
};

// Exp-free polynomial with ExpConstant coefficients: one of the p_i in the
// normal form p_1*exp(s_1) + ... + p_k*exp(s_k).
class PolyPart {
public:
    PolyPart() = default;  // zero
    static PolyPart constant(ExpConstant c);
    static PolyPart single(Monomial m, ExpConstant c);

    bool is_zero() const { return terms_.empty(); }
    bool is_unit_coefficient() const;  // exactly the constant rational 1
    const std::map<Monomial, ExpConstant>& terms() const { return terms_; }

    PolyPart operator+(const PolyPart& o) const;
    PolyPart operator-() const;
    PolyPart operator*(const PolyPart& o) const;

    ExpConstant unit_coefficient() const;  // coefficient of the unit monomial
    bool has_variables() const;

    static int compare(const PolyPart& a, const PolyPart& b);
    bool operator==(const PolyPart& o) const { return compare(*this, o) == 0; }
    bool operator<(const PolyPart& o) const { return compare(*this, o) < 0; }

private:
    std::map<Monomial, ExpConstant> terms_;  // no zero coefficients
};

// Canonical normal form: finite sum of poly * exp(exponent) with pairwise
// distinct canonical exponents. The zero exponent (empty EPoly) carries the
// exp-free polynomial part; every other exponent is structurally nonzero and
// has zero constant part (its constant summand has been folded into the
// coefficient as a formal e^c factor). Zero is the empty sum.
class EPoly {
public:
    struct ExpTerm;

    EPoly() = default;  // zero
    static EPoly from_constant(ExpConstant c);
    static EPoly from_gaussian(GaussianRational q) {
        return from_constant(ExpConstant::rational(std::move(q)));
    }
    static EPoly from_polypart(PolyPart p);
    static EPoly variable(const std::string& name);

    bool is_zero() const { return terms_.empty(); }

    EPoly operator+(const EPoly& o) const;
    EPoly operator-() const;
    EPoly operator-(const EPoly& o) const { return *this + (-o); }
    EPoly operator*(const EPoly& o) const;
    static EPoly exp(const EPoly& a);

    // Coefficient of the unit monomial at the zero exponent.
    ExpConstant constant_part() const;
    bool has_variables() const;
    std::optional<ExpConstant> as_constant() const;
    std::set<std::string> variables() const;

    static int compare(const EPoly& a, const EPoly& b);
    bool operator==(const EPoly& o) const { return compare(*this, o) == 0; }
    bool operator!=(const EPoly& o) const { return compare(*this, o) != 0; }
    bool operator<(const EPoly& o) const { return compare(*this, o) < 0; }

    const std::vector<ExpTerm>& terms() const { return terms_; }

    bool plain_rational_exponents() const;

    void check_invariants() const;

private:
    static EPoly from_sorted(std::vector<ExpTerm> terms);
    std::vector<ExpTerm> terms_;  // sorted by exponent, unique, no zero polys
};

struct EPoly::ExpTerm {
    EPoly exponent;
    PolyPart poly;
};

// Bottom-up conversion to the canonical form; semantics-preserving.
EPoly canonicalize(const Term& t);

// Any term whose canonical form is the input: canonicalize(to_term(a)) == a.
Term to_term(const EPoly& a);
Term to_term(const ExpConstant& c);

// Regime of a structural nonzero verdict for this value (see
// ExpConstant::plain_rational_exponents).
enum class ZeroTestRegime { Unconditional, SchanuelConditional };
ZeroTestRegime zero_test_regime(const EPoly& a);
ZeroTestRegime zero_test_regime(const ExpConstant& c);

}  // namespace expzero
