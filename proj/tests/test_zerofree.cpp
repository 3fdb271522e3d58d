#include <doctest.h>

#include "expzero/zerofree.hpp"
#include "oracles.hpp"

using namespace expzero;

namespace {

SearchBudget small_budget() {
    SearchBudget b;
    b.max_weight = 4;
    b.max_height = 4;
    b.max_bits = 128;
    return b;
}

GaussianRational gr(long v) { return GaussianRational(v); }

}  // namespace

TEST_CASE("check_candidate on the worked examples") {
    SearchBudget budget = small_budget();

    // P = exp(x*y), Q = x*y: flat for every a; witness at the first tuple 0.
    auto r1 = check_candidate(parse("exp(x*y)"), {"x"}, {gr(3)}, parse("x*y"), {"y"}, budget);
    CHECK(r1.condition_ii_holds);
    CHECK_FALSE(r1.identically_zero);
    REQUIRE(r1.witness);
    CHECK(r1.witness->point == std::vector<mpq_class>{0});
    CHECK(r1.witness->value == ExpConstant::one());

    // P = exp(y) - x at a = 0, Q = y: numerator x vanishes at 0.
    auto r2 = check_candidate(parse("exp(y)-x"), {"x"}, {gr(0)}, parse("y"), {"y"}, budget);
    CHECK(r2.condition_ii_holds);
    REQUIRE(r2.witness);
    CHECK(r2.witness->point == std::vector<mpq_class>{0});
    CHECK(r2.witness->value == ExpConstant::one());

    // Same P and Q at a = 1: numerator x = 1 does not vanish.
    auto r3 = check_candidate(parse("exp(y)-x"), {"x"}, {gr(1)}, parse("y"), {"y"}, budget);
    CHECK_FALSE(r3.condition_ii_holds);
    CHECK_FALSE(r3.identically_zero);
}

TEST_CASE("check_candidate flags the identically-zero case") {
    auto r = check_candidate(parse("x*exp(y)"), {"x"}, {gr(0)}, parse("y"), {"y"}, small_budget());
    CHECK(r.identically_zero);
    CHECK_FALSE(r.witness);
}

TEST_CASE("variable role clashes are rejected") {
    CHECK_THROWS_AS(
        check_candidate(parse("x"), {"x"}, {gr(0)}, parse("0"), {"x"}, small_budget()),
        VariableRoleClash);
    CHECK_THROWS_AS(
        check_candidate(parse("x+z"), {"x"}, {gr(0)}, parse("0"), {"y"}, small_budget()),
        EvalError);
}

TEST_CASE("extract_factor produces the expected c pairs") {
    Witness w{{mpq_class(0)}, ExpConstant::one(), 32};

    auto c1 = extract_factor(parse("exp(y)"), {}, {}, parse("y"), {"y"}, w, 3);
    CHECK(c1.c_numerator == ExpConstant::one());
    CHECK(c1.c_exponent.is_zero());
    CHECK(c1.checkpoints.size() == 3);

    Witness w2{{mpq_class(0)}, ExpConstant::rational(gr(2)), 32};
    auto c2 = extract_factor(parse("x*exp(y)"), {"x"}, {gr(2)}, parse("y"), {"y"}, w2, 3);
    CHECK(c2.c_numerator == ExpConstant::rational(gr(2)));
    CHECK(c2.c_exponent.is_zero());

    auto c3 = extract_factor(parse("exp(y+1)"), {}, {},  parse("y"), {"y"},
                        Witness{{mpq_class(0)},
                                ExpConstant::exp_of(ExpConstant::rational(gr(1))), 32},
                        3);
    CHECK(c3.c_numerator == ExpConstant::exp_of(ExpConstant::rational(gr(1))));
    CHECK(c3.c_exponent.is_zero());
}

TEST_CASE("extract_factor aborts when the identity cannot hold") {
    // exp(y) - x at a = 1 is not c * exp(y); the cross-multiplied identity
    // must fail rather than emit a bogus certificate.
    Witness w{{mpq_class(1)}, eval_exact(parse("exp(1)-1"), {}), 32};
    CHECK_THROWS_AS(extract_factor(parse("exp(y)-x"), {"x"}, {gr(1)}, parse("y"), {"y"}, w, 3),
                    std::logic_error);
}

TEST_CASE("search_zerofree finds the weight-minimal candidate") {
    auto cert = search_zerofree(parse("exp(y)-x"), {"x"}, {gr(0)}, {"y"}, small_budget());
    REQUIRE(cert);
    CHECK(cert->q == parse("y"));
    CHECK(cert->witness.point == std::vector<mpq_class>{0});
    std::string why;
    CHECK(verify_zerofree(*cert, small_budget(), &why));
}

TEST_CASE("search_zerofree returns nothing when a zero exists") {
    CHECK_FALSE(search_zerofree(parse("exp(y)-x"), {"x"}, {gr(1)}, {"y"}, small_budget()));
}

TEST_CASE("constant nonzero P certifies with Q = 0") {
    auto cert = search_zerofree(parse("1"), {"x"}, {gr(5)}, {"y"}, small_budget());
    REQUIRE(cert);
    CHECK(cert->q == parse("0"));
    CHECK(verify_zerofree(*cert, small_budget()));
}

TEST_CASE("nonconstant polynomials in y never certify") {
    // Polynomials have zeros; Q = 0 completeness in the contrapositive.
    CHECK_FALSE(search_zerofree(parse("y*y-x"), {"x"}, {gr(2)}, {"y"}, small_budget()));
    CHECK_FALSE(search_zerofree(parse("y+1"), {}, {}, {"y"}, small_budget()));
}

TEST_CASE("verify_zerofree rejects tampered certificates") {
    auto cert = search_zerofree(parse("exp(y)-x"), {"x"}, {gr(0)}, {"y"}, small_budget());
    REQUIRE(cert);

    auto tampered = *cert;
    tampered.q = parse("y+1");
    std::string why;
    CHECK_FALSE(verify_zerofree(tampered, small_budget(), &why));
    CHECK(!why.empty());

    tampered = *cert;
    tampered.point = {gr(1)};
    CHECK_FALSE(verify_zerofree(tampered, small_budget(), &why));

    tampered = *cert;
    tampered.witness.value = ExpConstant::rational(gr(7));
    CHECK_FALSE(verify_zerofree(tampered, small_budget(), &why));

    tampered = *cert;
    tampered.c_numerator = ExpConstant::rational(gr(7));
    CHECK_FALSE(verify_zerofree(tampered, small_budget(), &why));
}

TEST_CASE("threaded candidate checking matches the serial result") {
    GaussianRational half(make_rational(1, 2));
    for (unsigned threads : {1u, 4u}) {
        auto cert =
            search_zerofree(parse("exp(x*y)"), {"x"}, {half}, {"y"}, small_budget(), threads);
        REQUIRE(cert);
        CHECK(cert->q == parse("x*y"));
    }
}
