#include <doctest.h>

#include "expzero/epoly.hpp"
#include "expzero/numerics.hpp"
#include "oracles.hpp"

using namespace expzero;

namespace {
EPoly canon(const std::string& s) { return canonicalize(parse(s)); }
}

TEST_CASE("canonicalize collapses exp identities") {
    CHECK(canon("exp(0)") == canon("1"));
    CHECK(canon("exp(x)*exp(y)") == canon("exp(x+y)"));
    CHECK(canon("exp(x)*exp(-x)") == canon("1"));
}

TEST_CASE("constant extraction from exponents merges as a formal e^c factor") {
    EPoly e = canon("2*exp(y+1) + 3*exp(y)");
    REQUIRE(e.terms().size() == 1);
    const auto& term = e.terms()[0];
    CHECK(term.exponent == canon("y"));
    REQUIRE(term.poly.terms().size() == 1);
    const auto& [mono, coeff] = *term.poly.terms().begin();
    CHECK(mono.is_unit());
    // Coefficient 2*e^1 + 3: entries (0 -> 3), (1 -> 2).
    REQUIRE(coeff.entries().size() == 2);
    CHECK(coeff.entries()[0].key.is_zero());
    CHECK(coeff.entries()[0].coeff == GaussianRational(3));
    CHECK(coeff.entries()[1].key == ExpConstant::rational(GaussianRational(1)));
    CHECK(coeff.entries()[1].coeff == GaussianRational(2));
    CHECK(e == canon("(2*exp(1)+3)*exp(y)"));
}

TEST_CASE("ring operation examples") {
    CHECK(canon("x") + EPoly() == canon("x"));
    CHECK(canon("(x+1)*(x-1)") == canon("x*x-1"));
    CHECK(EPoly::exp(EPoly()) == canon("1"));
    CHECK(EPoly::exp(canon("y+1")) == canon("exp(1)*exp(y)"));
}

TEST_CASE("is_zero on structural identities") {
    CHECK(canon("exp(x)-exp(x)").is_zero());
    CHECK_FALSE(canon("exp(x)-exp(y)").is_zero());
    CHECK(canon("exp(x+1)-exp(1)*exp(x)").is_zero());
}

TEST_CASE("as_constant") {
    auto c1 = canon("(y+1)-y").as_constant();
    REQUIRE(c1);
    CHECK(*c1 == ExpConstant::rational(GaussianRational(1)));
    CHECK_FALSE(canon("x*y").as_constant());
    auto c2 = canon("exp(1)+2").as_constant();
    REQUIRE(c2);
    CHECK(*c2 == ExpConstant::rational(GaussianRational(2)) +
                     ExpConstant::exp_of(ExpConstant::rational(GaussianRational(1))));
}

TEST_CASE("to_term examples") {
    CHECK(print(to_term(EPoly())) == "0");
    CHECK(print(to_term(canon("exp(x+y)"))) == "exp(x+y)");
}

TEST_CASE("to_term round trip on random terms") {
    oracle::TermGen gen(2024, {"x", "y"});
    for (int i = 0; i < 1000; ++i) {
        EPoly e = canonicalize(gen.gen(1 + i % 12));
        e.check_invariants();
        CHECK(canonicalize(to_term(e)) == e);
    }
}

TEST_CASE("canonicalization is a ring homomorphism") {
    oracle::TermGen gen(31337, {"x", "y", "z"});
    for (int i = 0; i < 400; ++i) {
        Term a = gen.gen(1 + i % 10), b = gen.gen(1 + (i * 7) % 10);
        CHECK(canonicalize(Term::add(a, b)) == canonicalize(a) + canonicalize(b));
        CHECK(canonicalize(Term::mul(a, b)) == canonicalize(a) * canonicalize(b));
        CHECK(canonicalize(Term::neg(a)) == -canonicalize(a));
        CHECK(canonicalize(Term::exp(a)) == EPoly::exp(canonicalize(a)));
    }
}

TEST_CASE("ring axioms hold structurally") {
    oracle::TermGen gen(4242, {"x", "y"});
    for (int i = 0; i < 300; ++i) {
        EPoly a = canonicalize(gen.gen(1 + i % 9));
        EPoly b = canonicalize(gen.gen(1 + (i * 3) % 9));
        EPoly c = canonicalize(gen.gen(1 + (i * 5) % 9));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("idempotence through to_term") {
    oracle::TermGen gen(555, {"x", "y"});
    for (int i = 0; i < 300; ++i) {
        Term t = gen.gen(1 + i % 12);
        EPoly once = canonicalize(t);
        CHECK(canonicalize(to_term(once)) == once);
    }
}

TEST_CASE("exponent keys carry no constant part") {
    oracle::TermGen gen(808, {"x", "y"});
    for (int i = 0; i < 300; ++i) {
        EPoly e = canonicalize(gen.gen(1 + i % 12));
        for (const auto& term : e.terms()) {
            if (term.exponent.is_zero()) continue;
            CHECK(term.exponent.constant_part().is_zero());
        }
        e.check_invariants();
    }
}

TEST_CASE("structural zeros evaluate to zero exactly") {
    oracle::TermGen gen(616, {"x", "y"});
    for (int i = 0; i < 25; ++i) {
        Term a = gen.gen(1 + i % 6), b = gen.gen(1 + (i * 3) % 6), c = gen.gen(1 + (i * 5) % 6);
        std::vector<Term> zeros = {
            Term::sub(a, a),
            Term::sub(Term::mul(Term::add(a, b), c), Term::add(Term::mul(a, c), Term::mul(b, c))),
            Term::sub(Term::exp(Term::add(a, b)), Term::mul(Term::exp(a), Term::exp(b)))};
        for (const Term& z : zeros) {
            REQUIRE(canonicalize(z).is_zero());
            for (int s = 0; s < 4; ++s) {
                std::map<std::string, GaussianRational> point{
                    {"x", GaussianRational(gen.small_rational())},
                    {"y", GaussianRational(gen.small_rational())}};
                CHECK(eval_exact(z, point).is_zero());
            }
        }
    }
}

TEST_CASE("semantic preservation: enclosures of t and its normal form agree") {
    oracle::TermGen gen(99, {"x", "y"}, false);
    int tested = 0;
    for (int i = 0; tested < 40 && i < 400; ++i) {
        Term t = gen.gen(1 + i % 8);
        Term normal = to_term(canonicalize(t));
        std::map<std::string, GaussianRational> point{
            {"x", GaussianRational(make_rational(1, 2))},
            {"y", GaussianRational(make_rational(-1, 3))}};
        try {
            Dyadic prev_width(-1);
            for (long bits : {32L, 64L, 128L}) {
                ComplexInterval e1 = eval_enclosure(t, point, bits);
                ComplexInterval e2 = eval_enclosure(normal, point, bits);
                CHECK(e1.intersects(e2));
                Dyadic w = e1.max_width();
                if (prev_width.sign() >= 0) CHECK(w <= prev_width);
                prev_width = w;
            }
            ++tested;
        } catch (const EnclosureOverflow&) {
            // exp towers can exceed the representable range; skip those
        }
    }
    CHECK(tested >= 40);
}

TEST_CASE("zero-test regime flags nested constants") {
    CHECK(zero_test_regime(canon("exp(2)+1")) == ZeroTestRegime::Unconditional);
    CHECK(zero_test_regime(canon("exp(x+1/2)")) == ZeroTestRegime::Unconditional);
    CHECK(zero_test_regime(canon("exp(exp(1))")) == ZeroTestRegime::SchanuelConditional);
    CHECK(zero_test_regime(canon("exp(y+exp(1))")) == ZeroTestRegime::SchanuelConditional);
}

TEST_CASE("a structural zero evaluates to zero at one hundred rational points") {
    oracle::TermGen gen(4040, {"x", "y"});
    Term a = gen.gen(6), b = gen.gen(5);
    std::vector<Term> zeros = {
        Term::sub(Term::mul(a, b), Term::mul(b, a)),
        Term::sub(Term::exp(Term::add(a, b)), Term::mul(Term::exp(a), Term::exp(b))),
        Term::sub(Term::mul(Term::add(a, b), Term::add(a, b)),
                  Term::add(Term::add(Term::mul(a, a), Term::mul(b, b)),
                            Term::add(Term::mul(a, b), Term::mul(a, b))))};
    for (const Term& z : zeros) {
        REQUIRE(canonicalize(z).is_zero());
        for (int s = 0; s < 100; ++s) {
            std::map<std::string, GaussianRational> point{
                {"x", GaussianRational(gen.small_rational(), gen.small_rational())},
                {"y", GaussianRational(gen.small_rational())}};
            CHECK(eval_exact(z, point).is_zero());
        }
    }
}
