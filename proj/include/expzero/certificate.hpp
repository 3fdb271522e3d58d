#pragma once

#include "expzero/decide.hpp"

namespace expzero {

// Line-oriented rendering of a verdict with its certificate payload:
//   VERDICT <IN|NOT_IN|IN_IDENTICALLY_ZERO|UNKNOWN>
// followed by two-space-indented "key value" lines. Deterministic: identical
// verdicts render byte-identically.
std::string render_verdict(const Verdict& verdict, const Term& p,
                           const std::vector<std::string>& x_vars,
                           const std::vector<GaussianRational>& point,
                           const std::vector<std::string>& y_vars, const SearchBudget& budget);

// Replays a rendered IN / NOT_IN / IN_IDENTICALLY_ZERO block from scratch.
// Returns false with a reason for malformed or invalid certificates.
bool verify_certificate(const std::string& text, const SearchBudget& budget,
                        std::string* why = nullptr);

}  // namespace expzero
