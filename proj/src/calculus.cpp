#include "expzero/calculus.hpp"

namespace expzero {

namespace {

// Derivative of an exp-free polynomial part, as an EPoly at the zero exponent.
EPoly poly_derivative(const PolyPart& p, const std::string& var) {
    EPoly out;
    for (const auto& [m, c] : p.terms()) {
        unsigned d = m.degree(var);
        if (d == 0) continue;
        PolyPart part = PolyPart::single(m.reduce(var), c * GaussianRational(static_cast<long>(d)));
        out = out + EPoly::from_polypart(std::move(part));
    }
    return out;
}

}  // namespace

EPoly derivative(const EPoly& a, const std::string& var) {
    EPoly out;
    for (const auto& t : a.terms()) {
        // d/dv [p * exp(s)] = (dp/dv + p * ds/dv) * exp(s)
        EPoly d = poly_derivative(t.poly, var);
        if (!t.exponent.is_zero()) {
            EPoly ds = derivative(t.exponent, var);
            d = d + EPoly::from_polypart(t.poly) * ds;
            d = d * EPoly::exp(t.exponent);
        }
        out = out + d;
    }
    return out;
}

EPoly flatness_numerator(const EPoly& p, const EPoly& q, const std::string& var) {
    return derivative(p, var) - p * derivative(q, var);
}

FlatnessFraction flatness_fraction(const EPoly& p, const EPoly& q, const std::string& var) {
    return {flatness_numerator(p, q, var), q};
}

}  // namespace expzero
