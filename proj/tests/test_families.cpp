#include "hyplab/families.hpp"

#include <doctest.h>

#include <cmath>

using namespace hyplab;

TEST_CASE("family spec strings round-trip with rational literals")
{
    const FamilySpec s = parse_family_spec("gencheb:alpha=-1/4,beta=-5/6");
    CHECK(s.tag == Family::gencheb);
    CHECK(make_family(s).param("beta") == -5.0 / 6.0);
    CHECK(parse_family_spec(format_family_spec(s)).params == s.params);
    CHECK(parse_number("5/9") == 5.0 / 9.0);
    CHECK(parse_number("-0.25") == -0.25);
    CHECK_THROWS_AS(parse_family_spec("modkm alpha=2"), SpecParseError);
    CHECK_THROWS_AS(make_family("modkm:alpha=2"), std::exception);
    CHECK_THROWS_AS(make_family("convex:eps=0.5,s0=0.3"), SpecParseError);
    CHECK_THROWS_AS(make_family("cosh:a=1,b=2"), std::exception);
    CHECK_THROWS(parse_number("1/0"));
}

TEST_CASE("thm32 coefficients are the stated rationals")
{
    const CoeffSequence t = thm32_family();
    CHECK(t.c(1) == doctest::Approx(10.0 / 18.0));
    CHECK(t.c(2) == doctest::Approx(2.0 / 8.0));
    CHECK(t.c(3) == doctest::Approx(16.0 / 27.0));
    CHECK(t.c(4) == doctest::Approx(3.0 / 11.0));
}

TEST_CASE("Grinspun closed form")
{
    // h(1) = 1/c1, h(n) = 2(1 - c1)/c1 for n >= 2.
    for (double c1 : {0.3, 0.7}) {
        const CoeffSequence g = grinspun(c1);
        CHECK(haar(g, 1) == doctest::Approx(1.0 / c1));
        for (int n = 2; n < 20; ++n)
            CHECK(haar(g, n) == doctest::Approx(2.0 * (1.0 - c1) / c1));
    }
}

TEST_CASE("cosh Haar weights are 2 cosh^2(an)")
{
    for (double a : {0.5, 1.0})
        for (int n = 1; n < 30; ++n)
            CHECK(haar(cosh_family(a), n) == doctest::Approx(2.0 * std::cosh(a * n) * std::cosh(a * n)).epsilon(1e-12));
}

TEST_CASE("generalized Chebyshev (-1/2,-1/2) is Chebyshev of the first kind")
{
    const CoeffSequence g = generalized_chebyshev(-0.5, -0.5);
    for (int n = 1; n < 40; ++n)
        CHECK(g.c(n) == doctest::Approx(chebyshev1().c(n)));
}

TEST_CASE("epsilon constructions give h(1) = 1 + eps")
{
    for (double e : {0.05, 0.2, 0.5, 0.8, 0.95}) {
        CHECK(haar(modified_km(2.0, beta_for_epsilon(e)), 1) == doctest::Approx(1.0 + e).epsilon(1e-13));
        CHECK(haar(convex_family_for_epsilon(e), 1) == doctest::Approx(1.0 + e).epsilon(1e-13));
    }
    CHECK_THROWS_AS(beta_for_epsilon(1.0), ParameterDomainError);
    CHECK_THROWS(convex_family_for_epsilon(0.0));
}

TEST_CASE("convex coefficients stay in the open unit interval long after a_n rounds")
{
    const CoeffSequence s = convex_family_for_epsilon(0.5);
    for (int n = 1; n <= 2000; ++n) {
        CHECK(s.c(n) > 0.0);
        CHECK(s.c(n) <= 1.0);
        CHECK(s.a(n) > 0.0);
        CHECK(s.a(n) <= 1.0);
    }
    CHECK_THROWS_AS(validate_convex(ConvexSeqSpec::geometric(0.9, 1.5)), ParameterDomainError);
}

TEST_CASE("set V membership")
{
    CHECK(in_V(-0.25, -5.0 / 6.0));
    CHECK(in_V(0.0, 0.0));
    CHECK_FALSE(in_V(-0.9, -0.9));
    CHECK_FALSE(in_V(-0.5, 0.5)); // alpha < beta
}

TEST_CASE("modified KM alpha = 2 closed forms match the recurrence")
{
    const double beta = 5.0;
    const Recurrence rec = recurrence(modified_km(2.0, beta), 60);
    for (double x : {0.4, 0.7, 0.93}) {
        const Eigen::VectorXd p = eval_P(rec, 60, x);
        for (int n = 1; n <= 30; ++n) {
            const OddEvenPair cf = km_special_closed_forms(beta, n, x);
            CHECK(cf.odd == doctest::Approx(p(2 * n - 1)).epsilon(1e-10));
            CHECK(cf.even == doctest::Approx(p(2 * n)).epsilon(1e-10));
        }
    }
}

TEST_CASE("h(1) < 2 region boundary")
{
    CHECK(h1_lt_2_region(2.0, 5.0));
    CHECK_FALSE(h1_lt_2_region(3.0, 5.0));
    CHECK(haar(modified_km(3.0, 5.0), 1) >= 2.0);
    CHECK(haar(modified_km(2.0, 5.0), 1) < 2.0);
}
