#include "expzero/decide.hpp"

#include <chrono>

namespace expzero {

bool check_identically_zero(const Term& p, const std::vector<std::string>& x_vars,
                            const std::vector<GaussianRational>& point,
                            const std::vector<std::string>& y_vars) {
    validate_roles(p, x_vars, point, y_vars);
    auto binding = bind_point(x_vars, point);
    if (!canonicalize(substitute(p, binding)).is_zero()) return false;
    // Cross-check the structural verdict by exact evaluation.
    auto tuples = rational_tuples(y_vars.size(), 2);
    unsigned checked = 0;
    while (auto q = tuples.next()) {
        if (++checked > 8) break;
        auto full = binding;
        for (size_t i = 0; i < y_vars.size(); ++i) full.emplace(y_vars[i], GaussianRational((*q)[i]));
        if (!eval_exact(p, full).is_zero())
            throw std::logic_error("structural zero contradicted by exact evaluation");
    }
    return true;
}

Verdict decide_membership(const Term& p, const std::vector<std::string>& x_vars,
                          const std::vector<GaussianRational>& point,
                          const std::vector<std::string>& y_vars, const SearchBudget& budget,
                          unsigned threads) {
    validate_roles(p, x_vars, point, y_vars);
    Verdict verdict;
    if (check_identically_zero(p, x_vars, point, y_vars)) {
        verdict.kind = VerdictKind::InIdenticallyZero;
        return verdict;
    }
    ZeroFreeSearch not_in(p, x_vars, point, y_vars, budget, threads);
    ZeroSearch in(p, x_vars, point, y_vars, budget);
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(budget.timeout_seconds));
    for (;;) {
        if (!not_in.result() && !not_in.exhausted()) not_in.step();
        if (not_in.result()) {
            verdict.kind = VerdictKind::NotIn;
            verdict.zero_free = *not_in.result();
            return verdict;
        }
        if (!in.result() && !in.exhausted()) in.step();
        if (in.result()) {
            verdict.kind = VerdictKind::In;
            verdict.has_zero = *in.result();
            return verdict;
        }
        if (not_in.exhausted() && in.exhausted()) {
            verdict.kind = VerdictKind::Unknown;
            verdict.budget_report =
                "zero-free: " + not_in.exhaust_reason() + "; zero: " + in.exhaust_reason();
            return verdict;
        }
        if (std::chrono::steady_clock::now() > deadline) {
            verdict.kind = VerdictKind::Unknown;
            verdict.budget_report = "timeout";
            return verdict;
        }
    }
}

}  // namespace expzero
