#include <doctest.h>

#include "expzero/rootcert.hpp"
#include "oracles.hpp"

using namespace expzero;

namespace {

Rectangle rect(long re_lo, long re_hi, long im_lo, long im_hi, long scale = 0) {
    return {DyadicInterval(Dyadic(re_lo, scale), Dyadic(re_hi, scale)),
            DyadicInterval(Dyadic(im_lo, scale), Dyadic(im_hi, scale))};
}

SearchBudget small_budget() {
    SearchBudget b;
    b.max_height = 3;
    b.max_bits = 128;
    b.max_winding_attempts = 128;
    return b;
}

}  // namespace

TEST_CASE("winding on the canonical examples") {
    CHECK(winding_number(parse("y"), "y", rect(-1, 1, -1, 1), 64) == 1);
    CHECK(winding_number(parse("exp(y)"), "y", rect(-1, 1, -1, 1), 64) == 0);
    CHECK(winding_number(parse("exp(y)-2"), "y", rect(0, 1, -1, 1), 64) == 1);
}

TEST_CASE("winding counts multiplicity") {
    CHECK(winding_number(parse("y*y"), "y", rect(-1, 1, -1, 1), 64) == 2);
    CHECK(winding_number(parse("y*y*y"), "y", rect(-1, 1, -1, 1), 64) == 3);
}

TEST_CASE("winding gives up when a zero sits on the boundary") {
    // Zero at 1 on the right edge: no subdivision can exclude it.
    CHECK_FALSE(winding_number(parse("y-1"), "y", rect(-1, 1, -1, 1), 64, 256));
}

TEST_CASE("winding rejects malformed inputs") {
    CHECK_THROWS_AS(winding_number(parse("y"), "y", rect(1, 1, -1, 1), 64),
                    std::invalid_argument);
    CHECK_THROWS_AS(winding_number(parse("x+y"), "y", rect(-1, 1, -1, 1), 64),
                    std::invalid_argument);
}

TEST_CASE("winding agrees with the contour-integral oracle") {
    struct Case {
        std::string f;
        long re_lo, re_hi, im_lo, im_hi;
    };
    std::vector<Case> cases = {
        {"y", -1, 1, -1, 1},
        {"exp(y)", -1, 1, -1, 1},
        {"exp(y)-2", 0, 1, -1, 1},
        {"y*y-2", -2, 2, -1, 1},
        {"y*y*y-y", -2, 2, -1, 1},
        {"exp(y)-1", -1, 1, -1, 1},
        {"exp(2*y)-exp(y)", -1, 1, -1, 1},
        {"y*exp(y)-y", -2, 2, -1, 1},
    };
    for (const auto& c : cases) {
        auto w = winding_number(parse(c.f), "y", rect(c.re_lo, c.re_hi, c.im_lo, c.im_hi), 64);
        REQUIRE(w);
        int expected = oracle::contour_winding(parse(c.f), "y", c.re_lo, c.re_hi, c.im_lo,
                                               c.im_hi);
        CHECK(*w == expected);
    }
}

TEST_CASE("find_zero_1d prefers exact rational zeros") {
    auto cert = find_zero_1d(parse("exp(y)-1"), small_budget());
    REQUIRE(cert);
    const auto* exact = std::get_if<ExactRationalZero>(&cert->evidence);
    REQUIRE(exact);
    CHECK(exact->zero == std::vector<GaussianRational>{GaussianRational(0)});
    CHECK(verify_haszero(*cert, small_budget()));
}

TEST_CASE("find_zero_1d certifies ln 2 by winding") {
    auto cert = find_zero_1d(parse("exp(y)-2"), small_budget());
    REQUIRE(cert);
    const auto* wz = std::get_if<WindingZero>(&cert->evidence);
    REQUIRE(wz);
    CHECK(wz->winding == 1);
    // ln 2 = 0.6931...: the certified rectangle must contain it.
    CHECK(wz->rect.re.lo().to_double() <= 0.6932);
    CHECK(wz->rect.re.hi().to_double() >= 0.6931);
    CHECK(wz->rect.im.lo().to_double() <= 0.0);
    CHECK(wz->rect.im.hi().to_double() >= 0.0);
    CHECK(verify_haszero(*cert, small_budget()));
}

TEST_CASE("find_zero_1d finds nothing for zero-free terms") {
    SearchBudget tight = small_budget();
    tight.max_winding_attempts = 40;
    tight.max_height = 2;
    CHECK_FALSE(find_zero_1d(parse("exp(y)"), tight));
}

TEST_CASE("search_zero on exp(y)-x") {
    auto exact = search_zero(parse("exp(y)-x"), {"x"}, {GaussianRational(1)}, {"y"},
                             small_budget());
    REQUIRE(exact);
    CHECK(std::holds_alternative<ExactRationalZero>(exact->evidence));

    auto winding = search_zero(parse("exp(y)-x"), {"x"}, {GaussianRational(2)}, {"y"},
                               small_budget());
    REQUIRE(winding);
    CHECK(std::holds_alternative<WindingZero>(winding->evidence));
    CHECK(verify_haszero(*winding, small_budget()));
}

TEST_CASE("search_zero slices a two-variable hunt, fixing y1 first") {
    auto cert = search_zero(parse("exp(y1)+exp(y2)"), {}, {}, {"y1", "y2"}, small_budget());
    REQUIRE(cert);
    const auto* wz = std::get_if<WindingZero>(&cert->evidence);
    REQUIRE(wz);
    CHECK(wz->free_var == "y2");
    REQUIRE(wz->fixed.count("y1"));
    CHECK(wz->fixed.at("y1") == GaussianRational(0));
    // The zero is at i*pi ~ 3.1416i.
    oracle::QInterval pi = oracle::pi_value(64);
    CHECK(wz->rect.im.lo().to_mpq() <= pi.hi);
    CHECK(pi.lo <= wz->rect.im.hi().to_mpq());
    CHECK(wz->rect.re.lo().to_mpq() <= 0);
    CHECK(wz->rect.re.hi().to_mpq() >= 0);
    CHECK(verify_haszero(*cert, small_budget()));
}

TEST_CASE("search_zero with no y variables") {
    CHECK(search_zero(parse("x-1"), {"x"}, {GaussianRational(1)}, {}, small_budget()));
    CHECK_FALSE(search_zero(parse("x-1"), {"x"}, {GaussianRational(2)}, {}, small_budget()));
}

TEST_CASE("verify_haszero rejects tampered certificates") {
    auto cert = search_zero(parse("exp(y)-x"), {"x"}, {GaussianRational(2)}, {"y"},
                            small_budget());
    REQUIRE(cert);
    auto tampered = *cert;
    std::get<WindingZero>(tampered.evidence).winding = 2;
    std::string why;
    CHECK_FALSE(verify_haszero(tampered, small_budget(), &why));
    CHECK(!why.empty());

    tampered = *cert;
    std::get<WindingZero>(tampered.evidence).rect = rect(5, 6, 5, 6);
    CHECK_FALSE(verify_haszero(tampered, small_budget(), &why));

    auto exact_cert = search_zero(parse("exp(y)-x"), {"x"}, {GaussianRational(1)}, {"y"},
                                  small_budget());
    REQUIRE(exact_cert);
    tampered = *exact_cert;
    std::get<ExactRationalZero>(tampered.evidence).zero = {GaussianRational(3)};
    CHECK_FALSE(verify_haszero(tampered, small_budget(), &why));
}

TEST_CASE("interior sampling sees small values near a certified zero") {
    // Heuristic cross-check of winding soundness: with w >= 1 certified, a
    // grid sample of the rectangle interior should get |f| close to zero.
    auto cert = search_zero(parse("exp(y)-x"), {"x"}, {GaussianRational(2)}, {"y"},
                            small_budget());
    REQUIRE(cert);
    const auto& wz = std::get<WindingZero>(cert->evidence);
    Term f = substitute(parse("exp(y)-x"), {{"x", GaussianRational(2)}});
    double best = 1e9;
    for (int i = 1; i < 16; ++i) {
        for (int j = 1; j < 16; ++j) {
            std::complex<double> z{
                wz.rect.re.lo().to_double() +
                    (wz.rect.re.hi().to_double() - wz.rect.re.lo().to_double()) * i / 16.0,
                wz.rect.im.lo().to_double() +
                    (wz.rect.im.hi().to_double() - wz.rect.im.lo().to_double()) * j / 16.0};
            best = std::min(best, std::abs(oracle::eval_double(f, {{"y", z}})));
        }
    }
    CHECK(best < 0.1);
}

TEST_CASE("argument reduction handles large imaginary parts") {
    // exp(100i) = cos 100 + i sin 100; the enclosure must pin both parts.
    std::map<std::string, GaussianRational> pt{{"y", GaussianRational(0, 100)}};
    ComplexInterval enc = eval_enclosure(parse("exp(y)"), pt, 96);
    double c = std::cos(100.0), s = std::sin(100.0);
    CHECK(enc.re().lo().to_double() <= c + 1e-12);
    CHECK(enc.re().hi().to_double() >= c - 1e-12);
    CHECK(enc.im().lo().to_double() <= s + 1e-12);
    CHECK(enc.im().hi().to_double() >= s - 1e-12);
    CHECK(enc.re().width().to_double() < 1e-20);
}

TEST_CASE("winding is stable under precision doubling") {
    struct Case {
        std::string f;
        Rectangle r;
    };
    for (const auto& c : {Case{"y", rect(-1, 1, -1, 1)}, Case{"exp(y)", rect(-1, 1, -1, 1)},
                          Case{"exp(y)-2", rect(0, 1, -1, 1)}}) {
        auto w64 = winding_number(parse(c.f), "y", c.r, 64);
        auto w128 = winding_number(parse(c.f), "y", c.r, 128);
        REQUIRE(w64);
        REQUIRE(w128);
        CHECK(*w64 == *w128);
    }
}

TEST_CASE("winding handles a zero just off the boundary") {
    // Zero at 1 + 2^-20, outside the right edge by a sliver.
    Term f = Term::sub(Term::variable("y"),
                       Term::constant(GaussianRational(mpq_class(1) + mpq_class(1, 1 << 20))));
    auto w = winding_number(f, "y", rect(-1, 1, -1, 1), 96, 8192);
    REQUIRE(w);
    CHECK(*w == 0);
}

TEST_CASE("winding matches constructed root counts on random products") {
    // f = (y - r_1) * ... * (y - r_k), optionally times exp(g(y)); the
    // winding must equal the number of roots inside the rectangle, since the
    // exponential factor never vanishes.
    std::mt19937 rng(4321);
    oracle::TermGen gen(4322, {"y"});
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        unsigned k = 1 + rng() % 3;
        std::vector<GaussianRational> roots;
        Term f = Term::constant(GaussianRational(1));
        for (unsigned j = 0; j < k; ++j) {
            // Roots on a quarter-integer grid, so boundary distance is exact.
            GaussianRational r(make_rational(static_cast<long>(rng() % 17) - 8, 4),
                               make_rational(static_cast<long>(rng() % 17) - 8, 4));
            roots.push_back(r);
            f = Term::mul(f, Term::sub(Term::variable("y"), Term::constant(r)));
        }
        if (trial % 2) f = Term::mul(f, Term::exp(gen.gen(3)));
        if (!free_vars(f).count("y")) continue;
        if (free_vars(f).size() != 1) continue;
        // Rectangle with eighth-offset corners: no root can sit on the edge.
        long re_lo = static_cast<long>(rng() % 9) - 6, im_lo = static_cast<long>(rng() % 9) - 6;
        Rectangle r{DyadicInterval(Dyadic(8 * re_lo + 1, -3), Dyadic(8 * (re_lo + 3) + 1, -3)),
                    DyadicInterval(Dyadic(8 * im_lo + 1, -3), Dyadic(8 * (im_lo + 3) + 1, -3))};
        int expected = 0;
        for (const auto& root : roots) {
            mpq_class re = root.re(), im = root.im();
            if (r.re.lo().to_mpq() < re && re < r.re.hi().to_mpq() &&
                r.im.lo().to_mpq() < im && im < r.im.hi().to_mpq())
                ++expected;
        }
        auto w = winding_number(f, "y", r, 96, 8192);
        REQUIRE(w);
        CHECK(*w == expected);
        ++checked;
    }
    CHECK(checked >= 30);
}
