#include "hyplab/appendixcheck.hpp"
#include "hyplab/families.hpp"

#include <doctest.h>

#include <cmath>

using namespace hyplab;

namespace {

// sigma_n(1) straight from the monic recurrence, exact rationals.
Rational sigma_at_one(int alpha, int beta, int n)
{
    const KMMonic<Rational> km{Rational(alpha), Rational(beta)};
    Rational prev = 1, cur = 1; // sigma_0, sigma_1 at 1
    if (n == 0)
        return prev;
    for (int k = 1; k < n; ++k) {
        const Rational next = cur - km.lambda(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace

TEST_CASE("sigma ratio closed form in exact arithmetic")
{
    for (int a : {2, 3, 5, 8}) {
        for (int b : {2, 3, 5, 8}) {
            const KMMonic<Rational> km{Rational(a), Rational(b)};
            for (int n = 0; n <= 12; ++n) {
                const Rational direct = sigma_at_one(a, b, n + 2) / sigma_at_one(a, b, n);
                CHECK(direct == km.ratio_closed(n));
            }
        }
    }
    CHECK(sigma_ratio(2, 5, 0).closed == 0.5);
    CHECK(sigma_ratio(2, 5, 3).closed == doctest::Approx(0.4));
    CHECK(sigma_ratio(4, 4, 7).closed == 0.5625);
    CHECK(sigma_ratio(4, 4, 7).exact_match.value());
}

TEST_CASE("kernel identity vanishes exactly for integer parameters")
{
    for (int n = 0; n <= exact_limit; ++n) {
        const KernelCheck k = kernel_identity_check(3.0, 8.0, n);
        REQUIRE(k.exact_zero.has_value());
        CHECK(*k.exact_zero);
        CHECK(k.residual < 1e-12 * std::max(1.0, k.scale));
    }
    CHECK_FALSE(kernel_identity_check(3.0, 8.0, exact_limit + 1).exact_zero.has_value());
    CHECK(kernel_identity_residual(2.5, 7.25, 15) < 1e-12);
}

TEST_CASE("kernel identity fails with the wrong companion sequence")
{
    const KMMonic<double> km{5.0, 3.0};
    const Eigen::VectorXd d = kernel_identity_defect<double>([&](int k) { return km.lambda(k); },
                                                             [&](int k) { return km.lambda(k); }, 6);
    CHECK(d.cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("general form with constant alpha*^2 = 1/4 for Chebyshev")
{
    const CoeffSequence ch = chebyshev1();
    for (int n = 0; n <= 15; ++n) {
        const Eigen::VectorXd d = kernel_identity_defect<double>(
            [&](int k) { return alpha(ch, k) * alpha(ch, k); }, [](int) { return 0.25; }, n);
        CHECK(d.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("tilde density against the reweighted KM density")
{
    CHECK(tilde_density_ratio(2.0, 5.0, 0.5) == doctest::Approx(1.0).epsilon(1e-10));
    const KMParams p = km_params(8.0, 3.0);
    for (int i = 1; i < 50; ++i) {
        const double x = p.gamma2 + (p.gamma1 - p.gamma2) * i / 50.0;
        CHECK(tilde_density_ratio(8.0, 3.0, x) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(km59_psi_prime(8.0, 3.0, x) == doctest::Approx(tilde_density(8.0, 3.0, x)).epsilon(1e-10));
    }
    CHECK(tilde_atom(8.0, 3.0) == doctest::Approx(5.0 / 7.0));
    CHECK(tilde_atom(3.0, 8.0) == 0.0);
}

TEST_CASE("mu* makes the tilde family orthogonal")
{
    const MuStarReport r = mustar_orthogonality(8.0, 5.0, 10);
    CHECK(r.max_offdiag <= 1e-7);
    CHECK(r.mass_error <= 1e-7);
    CHECK(r.gram.rows() == 11);
    for (int n = 0; n <= 10; ++n)
        CHECK(r.gram(n, n) > 0.0);
}
