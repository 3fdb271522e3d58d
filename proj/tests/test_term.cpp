#include <doctest.h>

#include "expzero/term.hpp"
#include "oracles.hpp"

using namespace expzero;

TEST_CASE("parse builds the expected trees") {
    Term t = parse("exp(x*y)");
    REQUIRE(t.kind() == TermKind::Exp);
    CHECK(t.lhs().kind() == TermKind::Mul);
    CHECK(t.lhs().lhs().name() == "x");
    CHECK(t.lhs().rhs().name() == "y");

    Term u = parse("exp(y) + -1*x");
    REQUIRE(u.kind() == TermKind::Add);
    CHECK(u.lhs() == Term::exp(Term::variable("y")));
    CHECK(u.rhs() ==
          Term::mul(Term::neg(Term::constant(GaussianRational(1))), Term::variable("x")));

    Term v = parse("3/2i + 1");
    REQUIRE(v.kind() == TermKind::Add);
    CHECK(v.lhs() == Term::constant(GaussianRational(0, make_rational(3, 2))));
    CHECK(v.rhs() == Term::constant(GaussianRational(1)));
}

TEST_CASE("parse handles complex constants and subtraction sugar") {
    CHECK(parse("(1+2i)") == Term::constant(GaussianRational(1, 2)));
    CHECK(parse("(1-2i)") == Term::constant(GaussianRational(1, -2)));
    CHECK(parse("(-3+0i)") == Term::constant(GaussianRational(-3)));
    // Without the 'i' tail, parentheses are ordinary grouping.
    CHECK(parse("(-3)") == Term::neg(Term::constant(GaussianRational(3))));
    CHECK(parse("a-b") ==
          Term::add(Term::variable("a"), Term::neg(Term::variable("b"))));
    CHECK(parse("i") == Term::variable("i"));
    CHECK(parse("2i") == Term::constant(GaussianRational(0, 2)));
}

TEST_CASE("parse reports positions on malformed input") {
    CHECK_THROWS_AS(parse("exp("), ParseError);
    CHECK_THROWS_AS(parse("1 +"), ParseError);
    CHECK_THROWS_AS(parse("3/0"), ParseError);
    CHECK_THROWS_AS(parse("x $ y"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    try {
        parse("x + $");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("print examples") {
    CHECK(print(Term::exp(Term::variable("y"))) == "exp(y)");
    CHECK(parse(print(Term::neg(Term::constant(GaussianRational(1))))) ==
          Term::neg(Term::constant(GaussianRational(1))));
    CHECK(print(parse("x*(y+z)")) == "x*(y+z)");
}

TEST_CASE("parse/print round trip on random terms") {
    oracle::TermGen gen(12345, {"x", "y", "z"});
    for (int i = 0; i < 1000; ++i) {
        Term t = gen.gen(1 + i % 14);
        Term back = parse(print(t));
        REQUIRE(back == t);
    }
}

TEST_CASE("free_vars") {
    CHECK(free_vars(parse("exp(x*y)")) == std::set<std::string>{"x", "y"});
    CHECK(free_vars(parse("5")).empty());
    CHECK(free_vars(parse("x+x")) == std::set<std::string>{"x"});
}

TEST_CASE("substitute") {
    auto two = Term::constant(GaussianRational(2));
    CHECK(substitute(parse("exp(x*y)"), {{"x", two}}) == parse("exp(2*y)"));
    CHECK(substitute(parse("x"), std::map<std::string, Term>{}) == parse("x"));
    // Simultaneous swap.
    CHECK(substitute(parse("x+y"), {{"x", parse("y")}, {"y", parse("x")}}) == parse("y+x"));
}

TEST_CASE("substitution composition with disjoint domains and ranges") {
    oracle::TermGen gen(777, {"x", "y", "u", "v"});
    for (int i = 0; i < 200; ++i) {
        Term t = gen.gen(8);
        std::map<std::string, Term> sigma{{"x", parse("u*u")}, {"y", parse("exp(u)")}};
        std::map<std::string, Term> tau{{"u", parse("v+1")}};
        // tau after sigma, as a single simultaneous map
        std::map<std::string, Term> composed;
        for (const auto& [k, val] : sigma) composed.emplace(k, substitute(val, tau));
        composed.emplace("u", parse("v+1"));
        CHECK(substitute(substitute(t, sigma), tau) == substitute(t, composed));
    }
}

TEST_CASE("free_vars after constant substitution") {
    oracle::TermGen gen(999, {"x", "y"});
    for (int i = 0; i < 200; ++i) {
        Term t = gen.gen(8);
        auto before = free_vars(t);
        auto after = free_vars(substitute(t, {{"x", Term::constant(GaussianRational(3))}}));
        before.erase("x");
        CHECK(after == before);
    }
}

TEST_CASE("weights count nodes plus constant bits") {
    CHECK(parse("0").weight() == 1);
    CHECK(parse("1").weight() == 1);
    CHECK(parse("1i").weight() == 1);
    CHECK(parse("2").weight() == 2);
    CHECK(parse("1/2").weight() == 2);
    CHECK(parse("exp(y)").weight() == 2);
    CHECK(parse("x+y").weight() == 3);
}

TEST_CASE("parser never crashes on fuzzed input") {
    std::mt19937 rng(0xF422);
    const std::string charset = "xy01i+-*/()exp ._,";
    for (int trial = 0; trial < 3000; ++trial) {
        std::string s;
        size_t len = rng() % 24;
        for (size_t j = 0; j < len; ++j) s += charset[rng() % charset.size()];
        try {
            Term t = parse(s);
            // Anything accepted must round trip.
            CHECK(parse(print(t)) == t);
        } catch (const ParseError&) {
        }
    }
}

TEST_CASE("Gaussian rational string round trip") {
    std::vector<GaussianRational> values = {
        GaussianRational(0),
        GaussianRational(1),
        GaussianRational(-1),
        GaussianRational(0, 1),
        GaussianRational(0, -1),
        GaussianRational(make_rational(3, 2)),
        GaussianRational(0, make_rational(-3, 2)),
        GaussianRational(make_rational(1, 3), make_rational(2, 7)),
        GaussianRational(make_rational(-5, 4), make_rational(-1, 9)),
        GaussianRational(2, make_rational(1, 2)),
    };
    for (const auto& v : values) {
        CHECK(GaussianRational::parse(v.str()) == v);
    }
    CHECK(GaussianRational::parse("i") == GaussianRational(0, 1));
    CHECK(GaussianRational::parse("-i") == GaussianRational(0, -1));
    CHECK(GaussianRational::parse("1+i") == GaussianRational(1, 1));
    CHECK(GaussianRational::parse("1-i") == GaussianRational(1, -1));
    CHECK_THROWS(GaussianRational::parse("09x"));
    CHECK_THROWS(GaussianRational::parse(""));
    std::mt19937 rng(31);
    for (int i = 0; i < 200; ++i) {
        GaussianRational v(make_rational(static_cast<long>(rng() % 41) - 20, 1 + rng() % 12),
                           make_rational(static_cast<long>(rng() % 41) - 20, 1 + rng() % 12));
        CHECK(GaussianRational::parse(v.str()) == v);
    }
}
