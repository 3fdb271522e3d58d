#include <doctest.h>

#include "expzero/calculus.hpp"
#include "expzero/numerics.hpp"
#include "oracles.hpp"

using namespace expzero;

namespace {
EPoly canon(const std::string& s) { return canonicalize(parse(s)); }
}

TEST_CASE("derivative examples") {
    CHECK(derivative(canon("y*y"), "y") == canon("2*y"));
    CHECK(derivative(canon("exp(y)"), "y") == canon("exp(y)"));
    CHECK(derivative(canon("exp(x*y)"), "x") == canon("y*exp(x*y)"));
    CHECK(derivative(canon("x*x*x+2*x"), "x") == canon("3*x*x+2"));
    CHECK(derivative(canon("exp(exp(y))"), "y") == canon("exp(y)*exp(exp(y))"));
    CHECK(derivative(canon("5"), "x").is_zero());
}

TEST_CASE("flatness numerator examples") {
    CHECK(flatness_numerator(canon("exp(x*y)"), canon("x*y"), "y").is_zero());
    CHECK(flatness_numerator(canon("exp(y)-x"), canon("y"), "y") == canon("x"));
    oracle::TermGen gen(11, {"x", "y"});
    for (int i = 0; i < 50; ++i) {
        EPoly p = canonicalize(gen.gen(1 + i % 8));
        CHECK(flatness_numerator(p, EPoly(), "y") == derivative(p, "y"));
    }
}

TEST_CASE("flatness fraction vanishes exactly with its numerator") {
    auto fr = flatness_fraction(canon("exp(x*y)"), canon("x*y"), "y");
    CHECK(fr.vanishes_identically());
    CHECK(fr.denominator_exponent == canon("x*y"));
    auto fr2 = flatness_fraction(canon("exp(y)-x"), canon("y"), "y");
    CHECK_FALSE(fr2.vanishes_identically());
}

TEST_CASE("derivative is linear and satisfies Leibniz and the exp rule") {
    oracle::TermGen gen(73, {"x", "y"});
    for (int i = 0; i < 500; ++i) {
        EPoly a = canonicalize(gen.gen(1 + i % 8));
        EPoly b = canonicalize(gen.gen(1 + (i * 3) % 8));
        const std::string v = i % 2 ? "x" : "y";
        CHECK(derivative(a + b, v) == derivative(a, v) + derivative(b, v));
        CHECK(derivative(a * b, v) == a * derivative(b, v) + b * derivative(a, v));
        CHECK(derivative(EPoly::exp(a), v) == derivative(a, v) * EPoly::exp(a));
    }
}

TEST_CASE("quotient rule shape of the flatness numerator") {
    oracle::TermGen gen(29, {"x", "y"});
    for (int i = 0; i < 200; ++i) {
        EPoly p = canonicalize(gen.gen(1 + i % 7));
        EPoly q = canonicalize(gen.gen(1 + (i * 5) % 7));
        CHECK(flatness_numerator(p, q, "y") ==
              derivative(p, "y") - p * derivative(q, "y"));
    }
}

TEST_CASE("finite differences approach the symbolic derivative") {
    // (f(q + h) - f(q)) / h = f'(q) + (h/2) f''(xi), so the difference
    // quotient widened by h * C with C an interval bound on |f''| over the
    // step segment must meet the derivative enclosure.
    std::vector<std::string> corpus = {"exp(y)", "y*y+exp(2*y)", "exp(y)*y - 3*y",
                                       "exp(y+1)+y*y*y", "exp(-y)+y"};
    long bits = 128;
    for (const auto& text : corpus) {
        Term f = parse(text);
        EPoly df = derivative(canonicalize(f), "y");
        EPoly d2f = derivative(df, "y");
        Term dft = to_term(df), d2ft = to_term(d2f);
        oracle::TermGen gen(std::hash<std::string>{}(text) & 0xffff, {});
        for (int s = 0; s < 10; ++s) {
            mpq_class q = gen.small_rational();
            for (long k : {8L, 12L}) {
                mpq_class h = oracle::pow2(-k);
                std::map<std::string, GaussianRational> at_q{{"y", GaussianRational(q)}};
                std::map<std::string, GaussianRational> at_qh{{"y", GaussianRational(q + h)}};
                ComplexInterval fq = eval_enclosure(f, at_q, bits);
                ComplexInterval fqh = eval_enclosure(f, at_qh, bits);
                // Division by h = 2^-k is an exact scaling.
                ComplexInterval quot{(fqh.re() - fq.re()).mul2(k), (fqh.im() - fq.im()).mul2(k)};
                ComplexInterval deriv = eval_enclosure(dft, at_q, bits);
                // Slope bound over the step segment.
                std::map<std::string, ComplexInterval> seg{
                    {"y", ComplexInterval(DyadicInterval(Dyadic::from_mpq_down(q, bits),
                                                          Dyadic::from_mpq_up(q + h, bits)),
                                          DyadicInterval())}};
                Dyadic c_bound = eval_enclosure(d2ft, seg, 64).mag_upper();
                Dyadic tol = (c_bound * Dyadic::from_mpq_up(h, 32)).round_up(32);
                ComplexInterval widened{
                    DyadicInterval(quot.re().lo() - tol, quot.re().hi() + tol),
                    DyadicInterval(quot.im().lo() - tol, quot.im().hi() + tol)};
                CHECK(widened.intersects(deriv));
            }
        }
    }
}
