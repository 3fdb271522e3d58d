#include "expzero/complex_interval.hpp"

#include <stdexcept>

#include <map>
#include <mutex>

namespace expzero {

namespace {

mpq_class pow2_mpq(long k) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, k >= 0 ? k : -k);
    return k >= 0 ? mpq_class(scale) : mpq_class(1) / mpq_class(scale);
}

// Partial sum of atan(1/m) with the error bounded by the first omitted term
// (alternating series with decreasing terms).
void machin_atan(unsigned long m, const mpq_class& tol, mpq_class& sum, mpq_class& err) {
    sum = 0;
    mpq_class power(1, m);  // (1/m)^(2k+1)
    mpq_class m2 = mpq_class(1) / (mpq_class(m) * mpq_class(m));
    for (unsigned long k = 0;; ++k) {
        mpq_class term = power / mpq_class(2 * k + 1);
        if (term <= tol) {
            err = term;
            return;
        }
        if (k % 2 == 0)
            sum += term;
        else
            sum -= term;
        power *= m2;
    }
}

constexpr long kExpMagnitudeCap = 24;  // e^x supported for |x| < 2^24

// Enclosure of e^x for a single dyadic point, at least `bits` accurate bits.
DyadicInterval exp_point(const Dyadic& x, long bits) {
    if (x.is_zero()) return DyadicInterval::point(Dyadic(1));
    long mag = x.mag2_upper();
    if (mag > kExpMagnitudeCap) {
        if (x.sign() > 0) throw EnclosureOverflow();
        // e^x <= 2^(-2^24) for x <= -2^24: a sliver just above zero.
        return {Dyadic(0), Dyadic(1, -(1L << kExpMagnitudeCap))};
    }
    long s = std::max(0L, mag + 1);  // |x / 2^s| <= 1/2
    long work = bits + s + 16;
    mpq_class r = x.mul2(-s).to_mpq();
    mpq_class tol = pow2_mpq(-(work + 2));
    mpq_class sum = 1, term = 1, tail;
    for (unsigned long k = 1;; ++k) {
        term *= r;
        term /= static_cast<unsigned long>(k);
        sum += term;
        mpq_class a = abs(term);
        if (a <= tol) {
            tail = a;  // remaining terms are dominated by a geometric series
            break;
        }
    }
    DyadicInterval enc(Dyadic::from_mpq_down(sum - tail, work),
                       Dyadic::from_mpq_up(sum + tail, work));
    for (long i = 0; i < s; ++i) {
        if (enc.lo().sign() <= 0) throw std::logic_error("exp enclosure lost positivity");
        enc = DyadicInterval(enc.lo() * enc.lo(), enc.hi() * enc.hi()).round_outward(work);
    }
    return enc.round_outward(bits);
}

}  // namespace

DyadicInterval pi_enclosure(long bits) {
    static std::mutex mutex;
    static std::map<long, DyadicInterval> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(bits);
        if (it != cache.end()) return it->second;
    }
    // pi = 16*atan(1/5) - 4*atan(1/239)
    mpq_class tol = pow2_mpq(-(bits + 12));
    mpq_class a5, e5, a239, e239;
    machin_atan(5, tol, a5, e5);
    machin_atan(239, tol, a239, e239);
    mpq_class lo = 16 * (a5 - e5) - 4 * (a239 + e239);
    mpq_class hi = 16 * (a5 + e5) - 4 * (a239 - e239);
    DyadicInterval enc(Dyadic::from_mpq_down(lo, bits + 4), Dyadic::from_mpq_up(hi, bits + 4));
    std::lock_guard<std::mutex> lock(mutex);
    return cache.emplace(bits, enc).first->second;
}

DyadicInterval exp_interval(const DyadicInterval& x, long bits) {
    if (x.lo() == x.hi()) return exp_point(x.lo(), bits);
    DyadicInterval lo_enc = exp_point(x.lo(), bits + 2);
    DyadicInterval hi_enc = exp_point(x.hi(), bits + 2);
    return DyadicInterval(lo_enc.lo(), hi_enc.hi()).round_outward(bits);
}

std::pair<DyadicInterval, DyadicInterval> sincos_interval(const DyadicInterval& x, long bits) {
    const DyadicInterval full(Dyadic(-1), Dyadic(1));
    if (x.width() >= Dyadic(8)) return {full, full};
    long mag = std::max(x.lo().abs().mag2_upper(), x.hi().abs().mag2_upper());
    if (mag > (1L << 20)) return {full, full};

    long work = bits + 16;
    DyadicInterval reduced = x;
    if (mag > 1) {
        // Shift by the nearest multiple of 2*pi; n is exact, the pi enclosure
        // carries the rounding.
        DyadicInterval two_pi = pi_enclosure(work + std::max(0L, mag) + 8).mul2(1);
        mpq_class ratio = x.midpoint().to_mpq() / two_pi.midpoint().to_mpq();
        mpz_class n;
        mpq_class shifted = ratio + mpq_class(1, 2);
        mpz_fdiv_q(n.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
        if (n != 0) reduced = x - two_pi.mul_int(n);
        if (reduced.abs_upper() > Dyadic(4)) return {full, full};
    }

    Dyadic mid = reduced.midpoint();
    Dyadic rad = reduced.radius();
    mpq_class m = mid.to_mpq();
    mpq_class tol = pow2_mpq(-(work + 2));
    // Joint Taylor series for sin and cos with a shared geometric tail bound.
    mpq_class sin_sum = 0, cos_sum = 1, term = 1, tail;
    for (unsigned long k = 1;; ++k) {
        term *= m;
        term /= static_cast<unsigned long>(k);
        int mod = static_cast<int>(k % 4);
        if (mod == 1)
            sin_sum += term;
        else if (mod == 2)
            cos_sum -= term;
        else if (mod == 3)
            sin_sum -= term;
        else
            cos_sum += term;
        mpq_class a = abs(term);
        if (k >= 8 && a <= tol) {
            tail = a;
            break;
        }
    }
    mpq_class rq = rad.to_mpq();
    auto clamp = [&](mpq_class lo, mpq_class hi) {
        DyadicInterval enc(Dyadic::from_mpq_down(lo, work), Dyadic::from_mpq_up(hi, work));
        Dyadic l = enc.lo() < Dyadic(-1) ? Dyadic(-1) : enc.lo();
        Dyadic h = enc.hi() > Dyadic(1) ? Dyadic(1) : enc.hi();
        if (l > h) l = h;  // degenerate after clamping
        return DyadicInterval(l, h).round_outward(bits);
    };
    // |sin'| <= 1 and |cos'| <= 1: widen the midpoint value by the radius.
    DyadicInterval sin_enc = clamp(sin_sum - tail - rq, sin_sum + tail + rq);
    DyadicInterval cos_enc = clamp(cos_sum - tail - rq, cos_sum + tail + rq);
    return {sin_enc, cos_enc};
}

ComplexInterval interval_exp(const ComplexInterval& z, long bits) {
    long work = bits + 8;
    DyadicInterval radial = exp_interval(z.re(), work);
    auto [sin_enc, cos_enc] = sincos_interval(z.im(), work);
    return ComplexInterval(radial * cos_enc, radial * sin_enc).round_outward(bits);
}

}  // namespace expzero
