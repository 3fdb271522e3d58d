#pragma once

#include <gmpxx.h>

#include <string>

namespace expzero {

// Exact binary rational man * 2^exp2. Canonical: mantissa odd, or zero with
// exponent zero. Addition and multiplication are exact; precision enters only
// through the explicit directed rounding operations.
class Dyadic {
public:
    Dyadic() : man_(0), exp2_(0) {}
    Dyadic(long v) : man_(v), exp2_(0) { normalize(); }
    Dyadic(mpz_class man, long exp2) : man_(std::move(man)), exp2_(exp2) { normalize(); }

    const mpz_class& mantissa() const { return man_; }
    long exponent() const { return exp2_; }

    bool is_zero() const { return man_ == 0; }
    int sign() const { return sgn(man_); }

    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
    Dyadic operator-() const { return Dyadic(-man_, exp2_); }
    Dyadic operator*(const Dyadic& o) const { return Dyadic(man_ * o.man_, exp2_ + o.exp2_); }
    Dyadic abs() const { return man_ < 0 ? -*this : *this; }
    // Exact scaling by 2^k.
    Dyadic mul2(long k) const { return is_zero() ? *this : Dyadic(man_, exp2_ + k); }
    // Exact halving.
    Dyadic half() const { return mul2(-1); }

    static int compare(const Dyadic& a, const Dyadic& b);
    bool operator==(const Dyadic& o) const { return compare(*this, o) == 0; }
    bool operator!=(const Dyadic& o) const { return compare(*this, o) != 0; }
    bool operator<(const Dyadic& o) const { return compare(*this, o) < 0; }
    bool operator<=(const Dyadic& o) const { return compare(*this, o) <= 0; }
    bool operator>(const Dyadic& o) const { return compare(*this, o) > 0; }
    bool operator>=(const Dyadic& o) const { return compare(*this, o) >= 0; }

    // Keep at most `bits` significant bits, rounding toward -inf / +inf.
    Dyadic round_down(long bits) const;
    Dyadic round_up(long bits) const;

    // Directed conversion from an arbitrary rational.
    static Dyadic from_mpq_down(const mpq_class& q, long bits);
    static Dyadic from_mpq_up(const mpq_class& q, long bits);
    // Exact conversion; throws if the denominator is not a power of two.
    static Dyadic from_mpq_exact(const mpq_class& q);

    mpq_class to_mpq() const;
    double to_double() const;
    // Exact value as a rational string, e.g. "-5/8"; parseable by mpq_class.
    std::string str() const { return to_mpq().get_str(); }

    // Smallest e with |x| <= 2^e for nonzero x; LONG_MIN sentinel for zero.
    long mag2_upper() const;

private:
    void normalize();
    mpz_class man_;
    long exp2_;
};

// Closed interval with dyadic endpoints, lo <= hi.
class DyadicInterval {
public:
    DyadicInterval() : lo_(0), hi_(0) {}
    DyadicInterval(Dyadic lo, Dyadic hi);
    static DyadicInterval point(Dyadic v) { return {v, v}; }
    static DyadicInterval from_mpq(const mpq_class& q, long bits);

    const Dyadic& lo() const { return lo_; }
    const Dyadic& hi() const { return hi_; }

    DyadicInterval operator+(const DyadicInterval& o) const { return {lo_ + o.lo_, hi_ + o.hi_}; }
    DyadicInterval operator-(const DyadicInterval& o) const { return {lo_ - o.hi_, hi_ - o.lo_}; }
    DyadicInterval operator-() const { return {-hi_, -lo_}; }
    DyadicInterval operator*(const DyadicInterval& o) const;
    DyadicInterval mul2(long k) const { return {lo_.mul2(k), hi_.mul2(k)}; }
    // Multiplication by an exact integer (sign-aware endpoint swap).
    DyadicInterval mul_int(const mpz_class& n) const;

    DyadicInterval round_outward(long bits) const {
        return {lo_.round_down(bits), hi_.round_up(bits)};
    }

    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool contains(const Dyadic& v) const { return lo_ <= v && v <= hi_; }
    bool intersects(const DyadicInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
    DyadicInterval hull(const DyadicInterval& o) const {
        return {lo_ <= o.lo_ ? lo_ : o.lo_, hi_ >= o.hi_ ? hi_ : o.hi_};
    }

    Dyadic width() const { return hi_ - lo_; }
    Dyadic midpoint() const { return (lo_ + hi_).half(); }
    Dyadic radius() const { return width().half(); }
    Dyadic abs_upper() const { return lo_.abs() > hi_.abs() ? lo_.abs() : hi_.abs(); }

private:
    Dyadic lo_, hi_;
};

}  // namespace expzero
