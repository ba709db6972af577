#include "hyplab/families.hpp"
#include "hyplab/measures.hpp"
#include "hyplab/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hyplab;

namespace {

// Eigenvalues below x of the zero-diagonal Jacobi matrix, by Sturm sign count.
int count_below(const Eigen::ArrayXd& off, double x)
{
    int count = 0;
    double d = -x;
    if (d < 0)
        ++count;
    for (Eigen::Index i = 0; i < off.size(); ++i) {
        if (d == 0.0)
            d = 1e-300;
        d = -x - off(i) * off(i) / d;
        if (d < 0)
            ++count;
    }
    return count;
}

double bisect_eigenvalue(const Eigen::ArrayXd& off, int j)
{
    double lo = -1.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (count_below(off, mid) > j ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("measures are probability measures")
{
    for (const char* spec : {"cheb1", "gencheb:alpha=-1/4,beta=-5/6", "cosh:a=1", "km:alpha=8,beta=5",
                             "modkm:alpha=2,beta=5", "modkm:alpha=8,beta=5", "thm32"}) {
        CAPTURE(spec);
        const MeasureSpec mu = measure_of(make_family(spec));
        REQUIRE(mu.has_density());
        CHECK(total_mass(mu) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("second moment equals c_1")
{
    for (const char* spec : {"cosh:a=0.5", "modkm:alpha=5,beta=5", "km:alpha=2,beta=5"}) {
        const CoeffSequence s = make_family(spec);
        const auto I = inner_product(measure_of(s), [](double x) { return x; }, [](double x) { return x; });
        CHECK(I.value == doctest::Approx(s.c(1)).epsilon(1e-10));
    }
}

TEST_CASE("modified KM(2,5) density has the stated closed form")
{
    const MeasureSpec mu = measure_of(modified_km(2.0, 5.0));
    for (double x : {0.4, 0.6, 0.9, -0.5}) {
        const double ref = 15.0 * std::sqrt((1 - x * x) * (9 * x * x - 1)) /
                           (2.0 * std::numbers::pi * std::abs(x) * (10.0 - 9.0 * x * x));
        CHECK(mu.density(x) == doctest::Approx(ref).epsilon(1e-13));
    }
    CHECK(mu.density(0.2) == 0.0);
    CHECK(mu.atoms.empty());
}

TEST_CASE("modified KM(8,5) carries an atom 3/8 at 0")
{
    const MeasureSpec mu = measure_of(modified_km(8.0, 5.0));
    REQUIRE(mu.atoms.size() == 1);
    CHECK(mu.atoms[0].location == 0.0);
    CHECK(mu.atoms[0].mass == doctest::Approx(3.0 / 8.0));
    CHECK(orthogonality_check(modified_km(8.0, 5.0), 12, 1e-7).pass);
}

TEST_CASE("measures without a density refuse to integrate")
{
    const MeasureSpec g = measure_of(grinspun(0.7));
    CHECK(g.status == MeasureStatus::density_unknown);
    CHECK_THROWS_AS(orthogonality_check(grinspun(0.7), 4, 1e-7), MissingDensityError);
    CHECK(measure_of(convex_family_for_epsilon(0.5)).status == MeasureStatus::atoms_unknown);
}

TEST_CASE("tanh-sinh handles endpoint singularities")
{
    auto one = [](auto f) {
        return [f](double x, double, double) { return Eigen::ArrayXXd::Constant(1, 1, f(x)); };
    };
    const QuadratureOptions opt;
    CHECK(tanh_sinh(one([](double x) { return std::sqrt(x); }), 0.0, 1.0, opt).value(0, 0) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const PieceIntegrand arcsine = [](double, double dl, double dr) {
        return Eigen::ArrayXXd::Constant(1, 1, 1.0 / std::sqrt(dl * dr));
    };
    CHECK(tanh_sinh(arcsine, -1.0, 1.0, opt).value(0, 0) == doctest::Approx(std::numbers::pi).epsilon(1e-10));
}

TEST_CASE("Chebyshev Jacobi spectrum is the zero set of T_N")
{
    const int N = 40;
    const Eigen::VectorXd ev = jacobi_spectrum(chebyshev1(), N).eigenvalues;
    for (int j = 1; j <= N; ++j)
        CHECK(ev(N - j) == doctest::Approx(std::cos((2 * j - 1) * std::numbers::pi / (2 * N))).epsilon(1e-12));
}

TEST_CASE("Jacobi spectrum agrees with Sturm bisection")
{
    for (const char* spec : {"modkm:alpha=2,beta=5", "convex:eps=0.5", "grinspun:c1=0.7"}) {
        CAPTURE(spec);
        const CoeffSequence s = make_family(spec);
        const int N = 60;
        Eigen::ArrayXd off(N - 1);
        for (int k = 1; k < N; ++k)
            off(k - 1) = alpha(s, k);
        const Eigen::VectorXd ev = jacobi_spectrum(s, N).eigenvalues;
        for (int j = 0; j < N; ++j)
            CHECK(std::abs(ev(j) - bisect_eigenvalue(off, j)) < 1e-12);
    }
}

TEST_CASE("quadrature linearization matches the recurrence for cosh")
{
    const CoeffSequence s = cosh_family(1.0);
    const Eigen::MatrixXd Q = quadrature_linearization(s, 6);
    // Closed form: g(m,n;n-m) and g(m,n;n+m) for 1 <= m < n.
    const double a = 1.0;
    for (int n = 2; n <= 6; ++n) {
        for (int m = 1; m < n; ++m) {
            const double den = 2.0 * std::cosh(a * m) * std::cosh(a * n);
            CHECK(Q(m * 7 + n, n - m) == doctest::Approx(std::cosh(a * (n - m)) / den).epsilon(1e-9));
            CHECK(Q(m * 7 + n, n + m) == doctest::Approx(std::cosh(a * (n + m)) / den).epsilon(1e-9));
            CHECK(std::abs(Q(m * 7 + n, n)) < 1e-9);
        }
    }
}
