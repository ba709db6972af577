#include "hyplab/chebconnect.hpp"
#include "hyplab/families.hpp"

#include <doctest.h>

#include <cmath>

using namespace hyplab;

TEST_CASE("connection coefficients reproduce P_n through cos(k theta)")
{
    for (const char* spec : {"modkm:alpha=2,beta=5", "cosh:a=1", "gencheb:alpha=0,beta=0"}) {
        CAPTURE(spec);
        const CoeffSequence s = make_family(spec);
        const auto rows = connection_table(s, 30);
        const Recurrence rec = recurrence(s, 30);
        for (double theta : {0.3, 1.1, 2.5}) {
            const Eigen::VectorXd p = eval_P(rec, 30, std::cos(theta));
            for (const auto& r : rows) {
                double v = 0.0;
                for (int k = 0; k <= r.n; ++k)
                    v += r.C(k) * std::cos(k * theta);
                CHECK(v == doctest::Approx(p(r.n)).epsilon(1e-10).scale(1.0));
            }
        }
    }
}

TEST_CASE("coefficients sum to one and respect parity")
{
    const auto rows = connection_table(karlin_mcgregor(8.0, 5.0), 40);
    for (const auto& r : rows) {
        CHECK(r.C.sum() == doctest::Approx(1.0).epsilon(1e-12));
        for (int k = 0; k <= r.n; ++k)
            if ((r.n - k) % 2)
                CHECK(r.C(k) == 0.0);
    }
    CHECK(connection_coeffs(chebyshev1(), 7).C.isApprox(Eigen::VectorXd::Unit(8, 7)));
}

TEST_CASE("modified KM(8,5) turns negative at n = 31")
{
    const auto rows = connection_table(modified_km(8.0, 5.0), 40);
    int first = -1;
    for (const auto& r : rows) {
        if (r.C.minCoeff() < -1e-12) {
            first = r.n;
            break;
        }
    }
    CHECK(first == 31);
}

TEST_CASE("Chebyshev monomial table")
{
    const Eigen::MatrixXd T = chebyshev_t_monomials(4);
    // T_4 = 8x^4 - 8x^2 + 1
    CHECK(T(0, 4) == 1.0);
    CHECK(T(2, 4) == -8.0);
    CHECK(T(4, 4) == 8.0);
}

TEST_CASE("minimax probe")
{
    Eigen::VectorXd t3(4);
    t3 << 0.0, -0.75, 0.0, 1.0; // T_3 / 4
    CHECK(minimax_probe(t3) == doctest::Approx(0.25).epsilon(1e-12));
    Eigen::VectorXd q(3);
    q << -0.5, 0.0, 1.0;
    CHECK(minimax_probe(q) == doctest::Approx(0.5).epsilon(1e-12));
    // 1 - (x - x0)^2 peaks at x0 = 0.1234567, strictly between the 11 grid nodes.
    Eigen::VectorXd r(3);
    r << 1.0 - 0.1234567 * 0.1234567, 2.0 * 0.1234567, -1.0;
    CHECK(minimax_probe(r, {.grid_points = 11, .refine_top = 3}) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("tail limit detection")
{
    CHECK(tail_limit([](int n) { return 0.5 + std::exp(-n); }, 100, 1e-8).value() == doctest::Approx(0.5));
    CHECK_FALSE(tail_limit([](int n) { return n % 2 ? 0.2 : 0.3; }, 100, 1e-8).has_value());
}

TEST_CASE("criterion report predicates")
{
    const CriterionReport cheb = criterion_report(chebyshev1());
    CHECK(cheb.haar_ge_2_prediction);
    CHECK(cheb.connection_nonneg);
    CHECK(cheb.dual_full);

    const CriterionReport km = criterion_report(modified_km(2.0, 5.0));
    CHECK_FALSE(km.dual_full);
    CHECK_FALSE(km.connection_nonneg);
    CHECK_FALSE(km.haar_ge_2_prediction); // consistent with h(1) = 9/5

    const CriterionReport cosh = criterion_report(cosh_family(1.0));
    CHECK(cosh.nevai);
    REQUIRE(cosh.nevai_b.has_value());
    CHECK(*cosh.nevai_b < 1.0);

    const CriterionReport g = criterion_report(grinspun(0.7));
    CHECK_FALSE(g.nlp_prefix);
}
