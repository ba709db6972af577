#include "hyplab/core.hpp"
#include "hyplab/families.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace hyplab;

namespace {

// P_n by expanding monomials in exact-enough double arithmetic: independent of PStepper.
Eigen::MatrixXd monomial_table(const CoeffSequence& s, int N)
{
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N + 1, N + 1); // column n holds P_n
    M(0, 0) = 1.0;
    M(1, 1) = 1.0;
    for (int n = 1; n < N; ++n) {
        M.col(n + 1).tail(N) = M.col(n).head(N);
        M.col(n + 1) -= s.c(n) * M.col(n - 1);
        M.col(n + 1) /= s.a(n);
    }
    return M;
}

double horner(const Eigen::VectorXd& c, double x)
{
    double v = 0.0;
    for (Eigen::Index i = c.size() - 1; i >= 0; --i)
        v = v * x + c(i);
    return v;
}

} // namespace

TEST_CASE("Chebyshev first kind evaluates to cos(n theta)")
{
    const Recurrence rec = recurrence(chebyshev1(), 60);
    for (double theta : {0.1, 0.7, 1.3, 2.9}) {
        const Eigen::VectorXd p = eval_P(rec, 60, std::cos(theta));
        for (int n = 0; n <= 60; ++n)
            CHECK(p(n) == doctest::Approx(std::cos(n * theta)).epsilon(1e-12));
    }
}

TEST_CASE("P_n(1) = 1 exactly and parity holds")
{
    // The convex family grows past double range off its dual, so it gets a shorter prefix.
    for (auto [spec, N] : {std::pair{"modkm:alpha=2,beta=5", 300}, {"cosh:a=1", 300},
                           {"gencheb:alpha=-1/4,beta=-5/6", 300}, {"convex:eps=0.5", 60}}) {
        CAPTURE(spec);
        const Recurrence rec = recurrence(make_family(spec), N);
        const Eigen::VectorXd one = eval_P(rec, N, 1.0);
        CHECK((one.array() == 1.0).all());
        const Eigen::VectorXd p = eval_P(rec, N, 0.37);
        const Eigen::VectorXd q = eval_P(rec, N, -0.37);
        for (int n = 0; n <= N; ++n)
            CHECK(q(n) == (n % 2 ? -p(n) : p(n)));
    }
}

TEST_CASE("odd P_n vanish exactly at 0")
{
    const Recurrence rec = recurrence(modified_km(8.0, 5.0), 400);
    const Eigen::VectorXd p = eval_P(rec, 400, 0.0);
    for (int n = 1; n <= 400; n += 2)
        CHECK(p(n) == 0.0);
}

TEST_CASE("recurrence matches monomial expansion at low degree")
{
    const CoeffSequence s = modified_km(2.0, 5.0);
    const Eigen::MatrixXd M = monomial_table(s, 16);
    const Recurrence rec = recurrence(s, 16);
    for (double x : {-0.9, -0.2, 0.0, 0.45, 0.8, 1.0}) {
        const Eigen::VectorXd p = eval_P(rec, 16, x);
        for (int n = 0; n <= 16; ++n)
            CHECK(p(n) == doctest::Approx(horner(M.col(n), x)).epsilon(1e-10).scale(1.0));
    }
}

TEST_CASE("thm32 values agree with 50-digit references")
{
    // Rational recurrence evaluated with mpmath at 50 digits.
    const Recurrence rec = recurrence(thm32_family(), 200);
    const Eigen::VectorXd p06 = eval_P(rec, 200, 0.6);
    CHECK(p06(10) == doctest::Approx(-0.14229518336).epsilon(1e-13));
    CHECK(p06(50) == doctest::Approx(0.050641640854428026422).epsilon(1e-12));
    CHECK(p06(200) == doctest::Approx(-0.0049304005249182641093).epsilon(1e-10));
    const Eigen::VectorXd p095 = eval_P(rec, 200, 0.95);
    CHECK(p095(200) == doctest::Approx(-0.012789525940865159174).epsilon(1e-10));
    const Eigen::VectorXd p02 = eval_P(rec, 200, 0.2);
    CHECK(p02(50) == doctest::Approx(-78860.910904065627185).epsilon(1e-10));
    CHECK(p02(200) == doctest::Approx(3.1913691136939898337e22).epsilon(1e-9));

    CHECK(haar(thm32_family(), 1) == doctest::Approx(1.8).epsilon(1e-15));
    CHECK(haar(thm32_family(), 10) == doctest::Approx(20.0).epsilon(1e-14));
    CHECK(haar(thm32_family(), 40) == doctest::Approx(211.25).epsilon(1e-13));
}

TEST_CASE("three normalizations describe the same polynomials")
{
    const CoeffSequence s = cosh_family(0.5);
    const Recurrence rec = recurrence(s, 20);
    const double x = 0.63;
    const Eigen::VectorXd p = eval_P(rec, 20, x);
    const Eigen::VectorXd q = eval_orthonormal(rec, 20, x);
    const Eigen::VectorXd m = eval_monic(rec, 20, x);
    for (int n = 0; n <= 20; ++n) {
        // p_n = sqrt(h(n)) P_n, and sigma_n is P_n divided by its leading coefficient.
        CHECK(q(n) == doctest::Approx(std::sqrt(haar(s, n)) * p(n)).epsilon(1e-12));
        CHECK(horner(monic_coeffs(s, n), x) == doctest::Approx(m(n)).epsilon(1e-12));
    }
}

TEST_CASE("HaarWeights cache equals the product formula")
{
    const CoeffSequence s = generalized_chebyshev(0.5, -0.5);
    const HaarWeights h(s);
    for (int n : {40, 3, 0, 17})
        CHECK(h(n) == doctest::Approx(haar(s, n)).epsilon(1e-14));
    CHECK(h.head(5).size() == 6);
}

TEST_CASE("h(n) g(n,n;0) = 1 and alpha_n^2 = c_n a_{n-1}")
{
    const CoeffSequence s = karlin_mcgregor(8.0, 5.0);
    for (int n = 1; n < 30; ++n)
        CHECK(alpha(s, n) * alpha(s, n) == doctest::Approx(s.c(n) * s.a(n - 1)).epsilon(1e-15));
}

TEST_CASE("complex evaluation reduces to real on the axis")
{
    const Recurrence rec = recurrence(modified_km(5.0, 5.0), 50);
    const auto z = eval_P(rec, 50, std::complex<double>(0.41, 0.0));
    const Eigen::VectorXd r = eval_P(rec, 50, 0.41);
    for (int n = 0; n <= 50; ++n) {
        CHECK(z(n).imag() == 0.0);
        CHECK(z(n).real() == doctest::Approx(r(n)).epsilon(1e-14));
    }
}

TEST_CASE("sup_trace records onset and divergence")
{
    const Recurrence rec = recurrence(modified_km(2.0, 5.0), 400);
    const SupTrace in = sup_trace(rec, 0.5, 400, 1e-9, 1e6);
    CHECK_FALSE(in.diverged);
    CHECK(in.onset == -1);
    const SupTrace out = sup_trace(rec, 0.1, 400, 1e-9, 1e6);
    CHECK(out.diverged);
    CHECK(out.onset > 0);
    CHECK(out.last_degree < 400);
}

TEST_CASE("coefficient domain is enforced")
{
    const CoeffSequence bad = CoeffSequence::custom([](int n) { return n == 3 ? 1.5 : 0.5; }, "bad");
    CHECK_THROWS_AS(recurrence(bad, 5), CoefficientDomainError);
    CHECK_THROWS_AS(eval_P(recurrence(chebyshev1(), 4), 5, 0.3), DegreeOverflowError);
    CHECK_THROWS_AS(haar(convex_family_for_epsilon(0.5), 400), HaarRangeError);
}
