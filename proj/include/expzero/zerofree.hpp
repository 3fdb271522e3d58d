#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "expzero/calculus.hpp"
#include "expzero/enumerate.hpp"
#include "expzero/numerics.hpp"

namespace expzero {

// Knobs for the dovetailed searches. No bound is known relating the size of
// P to the size of a certifying Q, so these stay user-facing.
struct SearchBudget {
    unsigned max_weight = 6;           // candidate Q enumeration
    unsigned max_height = 6;           // rational witness / exact-zero tuples
    long max_bits = 256;               // precision ceiling for refinement loops
    double timeout_seconds = 10.0;     // wall-clock safety net
    unsigned max_winding_attempts = 4096;
    unsigned max_segments = 2048;      // boundary subdivision cap per rectangle
    // Widens the candidate constant pool beyond P's constants and {0, 1}.
    std::vector<GaussianRational> extra_constants;
};

class VariableRoleClash : public std::runtime_error {
public:
    explicit VariableRoleClash(const std::string& name)
        : std::runtime_error("variable in both roles: " + name) {}
};

// Throws VariableRoleClash / EvalError if the (x, y, P) setup is malformed.
void validate_roles(const Term& p, const std::vector<std::string>& x_vars,
                    const std::vector<GaussianRational>& point,
                    const std::vector<std::string>& y_vars);

std::map<std::string, GaussianRational> bind_point(const std::vector<std::string>& vars,
                                                   const std::vector<GaussianRational>& values);

// A rational tuple where P(a, q) is certified nonzero: condition (i).
struct Witness {
    std::vector<mpq_class> point;  // aligned with y_vars
    ExpConstant value;
    long bits;
};

struct CandidateResult {
    bool condition_ii_holds = false;
    std::optional<Witness> witness;
    bool identically_zero = false;
};

// One cross-multiplied sample of the factor identity
// P(a,q) * exp(Q(a,0)) == P(a,0) * exp(Q(a,q)), recorded with the common
// value of both sides.
struct IdentityCheckpoint {
    std::vector<mpq_class> point;
    ExpConstant value;
};

// Replayable evidence that P(a, y) is zero-free, i.e. equals c * exp(Q(a, y))
// with c represented relationally by the pair (P(a,0), Q(a,0)).
struct ZeroFreeCertificate {
    Term p;
    std::vector<std::string> x_vars;
    std::vector<GaussianRational> point;
    std::vector<std::string> y_vars;
    Term q;
    Witness witness;
    ExpConstant c_numerator;  // P(a, 0)
    ExpConstant c_exponent;   // Q(a, 0)
    std::vector<IdentityCheckpoint> checkpoints;
};

// Conditions (i) and (ii) for a concrete candidate Q at the point a:
//   (ii) every flatness numerator of (P, Q) vanishes identically at a;
//   (i)  some rational tuple gives a certified nonzero value of P.
CandidateResult check_candidate(const Term& p, const std::vector<std::string>& x_vars,
                                const std::vector<GaussianRational>& point, const Term& q,
                                const std::vector<std::string>& y_vars,
                                const SearchBudget& budget);

// Packages a passing candidate into a certificate; verifies the factor
// identity at sample_count deterministic rational tuples and aborts on any
// mismatch (which would indicate an internal algebra bug).
ZeroFreeCertificate extract_factor(const Term& p, const std::vector<std::string>& x_vars,
                                   const std::vector<GaussianRational>& point, const Term& q,
                                   const std::vector<std::string>& y_vars, const Witness& witness,
                                   unsigned sample_count);

// Stepwise enumeration-backed search so the driver can dovetail it against
// the zero hunt. One step processes a fixed batch of candidates.
class ZeroFreeSearch {
public:
    ZeroFreeSearch(Term p, std::vector<std::string> x_vars, std::vector<GaussianRational> point,
                   std::vector<std::string> y_vars, SearchBudget budget, unsigned threads = 1);

    // Runs one quantum; returns false when no work remains.
    bool step();
    bool exhausted() const { return exhausted_; }
    const std::optional<ZeroFreeCertificate>& result() const { return result_; }
    const std::string& exhaust_reason() const { return exhaust_reason_; }

    static constexpr unsigned kBatch = 8;

private:
    bool ensure_witness();

    Term p_;
    std::vector<std::string> x_vars_;
    std::vector<GaussianRational> point_;
    std::vector<std::string> y_vars_;
    SearchBudget budget_;
    unsigned threads_;
    EPoly p_canon_;
    bool p_identically_zero_ = false;
    TermEnumerator candidates_;
    std::set<EPoly> seen_;
    bool witness_ready_ = false;
    std::optional<Witness> witness_;
    std::optional<ZeroFreeCertificate> result_;
    bool exhausted_ = false;
    std::string exhaust_reason_;
};

// Runs the search to completion: the first candidate in enumeration order
// that passes both conditions, packaged via extract_factor.
std::optional<ZeroFreeCertificate> search_zerofree(const Term& p,
                                                   const std::vector<std::string>& x_vars,
                                                   const std::vector<GaussianRational>& point,
                                                   const std::vector<std::string>& y_vars,
                                                   const SearchBudget& budget,
                                                   unsigned threads = 1);

// Independent replay of every field; on failure *why names the first broken
// check.
bool verify_zerofree(const ZeroFreeCertificate& cert, const SearchBudget& budget,
                     std::string* why = nullptr);

// Condition (i) search shared with the clause evaluator.
std::optional<Witness> find_nonzero_witness(const Term& p,
                                            const std::map<std::string, GaussianRational>& fixed,
                                            const std::vector<std::string>& y_vars,
                                            const SearchBudget& budget);

}  // namespace expzero
