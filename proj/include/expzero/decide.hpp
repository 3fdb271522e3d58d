#pragma once

#include "expzero/rootcert.hpp"

namespace expzero {

enum class VerdictKind { In, NotIn, InIdenticallyZero, Unknown };

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    std::optional<ZeroFreeCertificate> zero_free;  // NotIn
    std::optional<HasZeroCertificate> has_zero;    // In
    std::string budget_report;                     // Unknown
};

// The universal case: P(a, y) vanishes identically. The structural test is
// cross-checked by exact evaluation at a few rational tuples; a mismatch
// signals an internal algebra bug and aborts.
bool check_identically_zero(const Term& p, const std::vector<std::string>& x_vars,
                            const std::vector<GaussianRational>& point,
                            const std::vector<std::string>& y_vars);

// Membership of the point in {a : exists y, P(a, y) = 0}: the identically-zero
// branch first, then the zero-free search dovetailed against the zero hunt in
// fixed work quanta. Results are deterministic for fixed budgets; the thread
// count never changes the outcome.
Verdict decide_membership(const Term& p, const std::vector<std::string>& x_vars,
                          const std::vector<GaussianRational>& point,
                          const std::vector<std::string>& y_vars, const SearchBudget& budget,
                          unsigned threads = 1);

}  // namespace expzero
