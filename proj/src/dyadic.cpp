#include "expzero/dyadic.hpp"

#include <cassert>
#include <climits>
#include <cmath>
#include <stdexcept>

namespace expzero {

void Dyadic::normalize() {
    if (man_ == 0) {
        exp2_ = 0;
        return;
    }
    unsigned long shift = mpz_scan1(man_.get_mpz_t(), 0);
    if (shift > 0) {
        mpz_fdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), shift);
        exp2_ += static_cast<long>(shift);
    }
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    long e = std::min(exp2_, o.exp2_);
    mpz_class a = man_, b = o.man_;
    if (exp2_ > e) mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), exp2_ - e);
    if (o.exp2_ > e) mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), o.exp2_ - e);
    return Dyadic(a + b, e);
}

int Dyadic::compare(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    Dyadic d = a - b;
    return d.sign();
}

Dyadic Dyadic::round_down(long bits) const {
    assert(bits >= 1);
    if (is_zero()) return *this;
    long n = static_cast<long>(mpz_sizeinbase(man_.get_mpz_t(), 2));
    if (n <= bits) return *this;
    long shift = n - bits;
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), man_.get_mpz_t(), shift);
    return Dyadic(std::move(q), exp2_ + shift);
}

Dyadic Dyadic::round_up(long bits) const {
    assert(bits >= 1);
    if (is_zero()) return *this;
    long n = static_cast<long>(mpz_sizeinbase(man_.get_mpz_t(), 2));
    if (n <= bits) return *this;
    long shift = n - bits;
    mpz_class q;
    mpz_cdiv_q_2exp(q.get_mpz_t(), man_.get_mpz_t(), shift);
    return Dyadic(std::move(q), exp2_ + shift);
}

Dyadic Dyadic::from_mpq_down(const mpq_class& q, long bits) {
    if (q == 0) return Dyadic();
    long den_bits = static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    long k = bits + den_bits + 2;
    mpz_class num;
    mpz_mul_2exp(num.get_mpz_t(), q.get_num().get_mpz_t(), k);
    mpz_class m;
    mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    return Dyadic(std::move(m), -k).round_down(bits);
}

Dyadic Dyadic::from_mpq_up(const mpq_class& q, long bits) {
    if (q == 0) return Dyadic();
    long den_bits = static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
    long k = bits + den_bits + 2;
    mpz_class num;
    mpz_mul_2exp(num.get_mpz_t(), q.get_num().get_mpz_t(), k);
    mpz_class m;
    mpz_cdiv_q(m.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    return Dyadic(std::move(m), -k).round_up(bits);
}

Dyadic Dyadic::from_mpq_exact(const mpq_class& q) {
    if (q == 0) return Dyadic();
    const mpz_class& den = q.get_den();
    unsigned long shift = mpz_scan1(den.get_mpz_t(), 0);
    mpz_class odd;
    mpz_fdiv_q_2exp(odd.get_mpz_t(), den.get_mpz_t(), shift);
    if (odd != 1) throw std::invalid_argument("not a dyadic rational: " + q.get_str());
    return Dyadic(q.get_num(), -static_cast<long>(shift));
}

mpq_class Dyadic::to_mpq() const {
    mpq_class q(man_);
    if (exp2_ >= 0) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, exp2_);
        q *= scale;
    } else {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, -exp2_);
        q /= mpq_class(scale);
    }
    return q;
}

double Dyadic::to_double() const {
    if (is_zero()) return 0.0;
    // Reduce to ~64 mantissa bits before conversion to avoid huge exponents.
    Dyadic r = round_down(64);
    double m = r.mantissa().get_d();
    long e = r.exponent();
    if (e > 4000) return m > 0 ? 1e308 : -1e308;
    if (e < -4000) return 0.0;
    return std::ldexp(m, static_cast<int>(e));
}

long Dyadic::mag2_upper() const {
    if (is_zero()) return LONG_MIN;
    return exp2_ + static_cast<long>(mpz_sizeinbase(man_.get_mpz_t(), 2));
}

DyadicInterval::DyadicInterval(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    assert(lo_ <= hi_);
}

DyadicInterval DyadicInterval::from_mpq(const mpq_class& q, long bits) {
    return {Dyadic::from_mpq_down(q, bits), Dyadic::from_mpq_up(q, bits)};
}

DyadicInterval DyadicInterval::operator*(const DyadicInterval& o) const {
    Dyadic p1 = lo_ * o.lo_, p2 = lo_ * o.hi_, p3 = hi_ * o.lo_, p4 = hi_ * o.hi_;
    Dyadic lo = p1, hi = p1;
    for (const Dyadic* p : {&p2, &p3, &p4}) {
        if (*p < lo) lo = *p;
        if (*p > hi) hi = *p;
    }
    return {std::move(lo), std::move(hi)};
}

DyadicInterval DyadicInterval::mul_int(const mpz_class& n) const {
    Dyadic a(lo_.mantissa() * n, lo_.exponent());
    Dyadic b(hi_.mantissa() * n, hi_.exponent());
    return n >= 0 ? DyadicInterval(std::move(a), std::move(b))
                  : DyadicInterval(std::move(b), std::move(a));
}

}  // namespace expzero
