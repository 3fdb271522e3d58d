#pragma once

#include <stdexcept>
#include <utility>

#include "expzero/dyadic.hpp"
#include "expzero/gaussian.hpp"

namespace expzero {

// Working precision in bits; the refinement loops double it.
struct Precision {
    long bits;
    explicit Precision(long b) : bits(b) {
        if (b < 8) throw std::invalid_argument("precision must be at least 8 bits");
    }
};

// Raised when an exponential would exceed the representable exponent range;
// the enclosure would be unbounded for practical purposes.
class EnclosureOverflow : public std::runtime_error {
public:
    EnclosureOverflow() : std::runtime_error("exponent range overflow in enclosure") {}
};

// Axis-aligned rectangle enclosure of a complex value.
class ComplexInterval {
public:
    ComplexInterval() = default;
    ComplexInterval(DyadicInterval re, DyadicInterval im)
        : re_(std::move(re)), im_(std::move(im)) {}
    static ComplexInterval point(Dyadic re, Dyadic im) {
        return {DyadicInterval::point(std::move(re)), DyadicInterval::point(std::move(im))};
    }
    static ComplexInterval from_gaussian(const GaussianRational& g, long bits) {
        return {DyadicInterval::from_mpq(g.re(), bits), DyadicInterval::from_mpq(g.im(), bits)};
    }

    const DyadicInterval& re() const { return re_; }
    const DyadicInterval& im() const { return im_; }

    ComplexInterval operator+(const ComplexInterval& o) const {
        return {re_ + o.re_, im_ + o.im_};
    }
    ComplexInterval operator-(const ComplexInterval& o) const {
        return {re_ - o.re_, im_ - o.im_};
    }
    ComplexInterval operator-() const { return {-re_, -im_}; }
    ComplexInterval operator*(const ComplexInterval& o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }

    ComplexInterval round_outward(long bits) const {
        return {re_.round_outward(bits), im_.round_outward(bits)};
    }

    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
    bool intersects(const ComplexInterval& o) const {
        return re_.intersects(o.re()) && im_.intersects(o.im());
    }

    // Upper bound on the modulus of any value in the rectangle.
    Dyadic mag_upper() const { return re_.abs_upper() + im_.abs_upper(); }
    Dyadic max_width() const {
        Dyadic wr = re_.width(), wi = im_.width();
        return wr > wi ? wr : wi;
    }

private:
    DyadicInterval re_, im_;
};

// Enclosure of pi at the given precision; cached per precision level and safe
// for concurrent use (initialization is idempotent).
DyadicInterval pi_enclosure(long bits);

// Enclosure of e^x over a real interval. Throws EnclosureOverflow when the
// upper endpoint exceeds the supported exponent range.
DyadicInterval exp_interval(const DyadicInterval& x, long bits);

// Enclosures of (sin x, cos x) over a real interval; always within [-1, 1].
std::pair<DyadicInterval, DyadicInterval> sincos_interval(const DyadicInterval& x, long bits);

// Enclosure of e^z via e^(a+bi) = e^a (cos b + i sin b).
ComplexInterval interval_exp(const ComplexInterval& z, long bits);

}  // namespace expzero
