#pragma once

#include "expzero/epoly.hpp"

namespace expzero {

// The numerator/denominator pair N / exp(D). Since exp never vanishes, the
// fraction is identically zero exactly when the numerator is.
struct FlatnessFraction {
    EPoly numerator;
    EPoly denominator_exponent;

    bool vanishes_identically() const { return numerator.is_zero(); }
};

// Canonical partial derivative with respect to one variable.
EPoly derivative(const EPoly& a, const std::string& var);

// Numerator of d/dv (P / exp(Q)), namely dP/dv - P * dQ/dv.
EPoly flatness_numerator(const EPoly& p, const EPoly& q, const std::string& var);

FlatnessFraction flatness_fraction(const EPoly& p, const EPoly& q, const std::string& var);

}  // namespace expzero
