#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace expzero {

// Exact complex rational re + im*i. Components are GMP rationals, which are
// kept canonical (coprime, positive denominator) by mpq_class itself.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long re) : re_(re), im_(0) {}
    GaussianRational(mpq_class re) : re_(std::move(re)), im_(0) {}
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational operator+(const GaussianRational& o) const {
        return {re_ + o.re_, im_ + o.im_};
    }
    GaussianRational operator-(const GaussianRational& o) const {
        return {re_ - o.re_, im_ - o.im_};
    }
    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }

    bool operator==(const GaussianRational& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    // Total order: real part first, then imaginary part.
    static int compare(const GaussianRational& a, const GaussianRational& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c;
        return cmp(a.im_, b.im_);
    }
    bool operator<(const GaussianRational& o) const { return compare(*this, o) < 0; }

    // Compact form: "0", "-1/2", "3/2i", "1+2i", "-1-2/3i". Never contains spaces.
    std::string str() const;

    // Accepts everything str() produces plus "i" and "-i".
    static GaussianRational parse(const std::string& text);

private:
    mpq_class re_;
    mpq_class im_;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& g);

// a/b with canonicalization (b may be negative or share factors with a).
mpq_class make_rational(long num, long den);

}  // namespace expzero
