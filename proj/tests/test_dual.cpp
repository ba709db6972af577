#include "hyplab/dual.hpp"
#include "hyplab/families.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace hyplab;

TEST_CASE("Chebyshev dual is the whole interval")
{
    const DualEstimate est = dual_estimate(chebyshev1(), {.N = 200, .grid_step = 1e-3});
    CHECK(est.covers_full_interval());
    REQUIRE(est.intervals.size() == 1);
    CHECK(est.intervals[0].lo == -1.0);
    CHECK(est.intervals[0].hi == 1.0);
}

TEST_CASE("grid is symmetric and contains the endpoints")
{
    const DualEstimate est = dual_estimate(modified_km(2.0, 5.0), {.N = 100, .grid_step = 3e-3});
    const Eigen::Index L = est.grid.size();
    CHECK(est.grid(0) == -1.0);
    CHECK(est.grid(L - 1) == 1.0);
    for (Eigen::Index i = 0; i < L; ++i) {
        CHECK(est.grid(i) == -est.grid(L - 1 - i));
        CHECK(est.member[i] == est.member[L - 1 - i]);
    }
}

TEST_CASE("raising N only removes members")
{
    for (const char* spec : {"modkm:alpha=2,beta=5", "modkm:alpha=8,beta=5", "convex:eps=0.5", "grinspun:c1=0.7"}) {
        CAPTURE(spec);
        const CoeffSequence s = make_family(spec);
        const DualEstimate lo = dual_estimate(s, {.N = 100, .grid_step = 1e-3});
        const DualEstimate hi = dual_estimate(s, {.N = 400, .grid_step = 1e-3});
        for (Eigen::Index i = 0; i < lo.grid.size(); ++i) {
            CHECK(hi.max_abs(i) >= lo.max_abs(i));
            if (hi.member[i])
                CHECK(lo.member[i]);
        }
    }
}

TEST_CASE("the epsilon sweep reproduces the gap endpoints")
{
    for (double e : {0.2, 0.5, 0.8}) {
        const DualEstimate est = dual_estimate(modified_km(2.0, beta_for_epsilon(e)));
        REQUIRE(est.intervals.size() == 2);
        const auto bound = prop31_bound(e);
        CHECK(std::abs(est.intervals[1].lo - bound[1].lo) <= 2 * est.options.grid_step);
        CHECK(std::abs(est.intervals[0].hi - bound[0].hi) <= 2 * est.options.grid_step);
        CHECK(prop31_cut(e) == doctest::Approx(std::sqrt((1 - e) / (1 + e))));
    }
    CHECK_THROWS_AS(prop31_cut(1.0), ParameterDomainError);
}

TEST_CASE("merge_runs bridges single-point gaps only")
{
    Eigen::VectorXd g = Eigen::VectorXd::LinSpaced(9, -1.0, 1.0);
    const auto runs = merge_runs(g, {true, true, false, true, false, false, true, true, true});
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].lo == -1.0);
    CHECK(runs[0].hi == g(3));
    CHECK(runs[1].lo == g(6));
}

TEST_CASE("divergence classification")
{
    const CoeffSequence s = modified_km(2.0, 5.0);
    CHECK(divergence_classify(s, 0.1, 400) == Membership::nonmember_diverged);
    CHECK(divergence_classify(s, 0.6, 400) == Membership::member_evidence);
    CHECK(membership_name(Membership::undecided) == "undecided");
}

TEST_CASE("support of the measure lies in the dual for hypergroups")
{
    const CoeffSequence s = modified_km(5.0, 5.0);
    const DualEstimate est = dual_estimate(s, {.N = 400, .grid_step = 1e-3});
    CHECK(support_violations(est, measure_of(s)).empty());
    const DualEstimate g = dual_estimate(grinspun(0.7), {.N = 400, .grid_step = 1e-3});
    CHECK_FALSE(support_violations(g, measure_of(grinspun(0.7))).empty());
}

TEST_CASE("convex family dual matches the spectrum and fails when displaced")
{
    const double e = 0.5;
    const CoeffSequence s = convex_family_for_epsilon(e);
    const DualEstimate est = dual_estimate(s);
    const SpectralMatch ok = match_discrete_dual(s, est, prop31_cut(e));
    CHECK(ok.pass());

    // Negative controls: members halfway between eigenvalues, and a member inside the gap.
    const Eigen::VectorXd ev = jacobi_spectrum(s, 400).eigenvalues;
    DualEstimate between = est;
    int placed = 0;
    for (Eigen::Index k = ev.size() - 1; k > 0 && placed < 3; --k) {
        if (ev(k) - ev(k - 1) < 10 * est.options.grid_step || ev(k - 1) < prop31_cut(e))
            continue;
        const Eigen::Index i = est.index_of(0.5 * (ev(k) + ev(k - 1)));
        between.member[i] = between.member[est.grid.size() - 1 - i] = true;
        ++placed;
    }
    REQUIRE(placed > 0);
    CHECK_FALSE(match_discrete_dual(s, between, prop31_cut(e)).pass());

    DualEstimate gap = est;
    gap.member[est.index_of(0.0)] = true;
    CHECK_FALSE(match_discrete_dual(s, gap, prop31_cut(e)).gap_respected);
}

TEST_CASE("Chebyshev survivors stay on the real axis")
{
    const ComplexScan c = complex_scan(chebyshev1(), 200, 0.02, 1e-9, 1.2);
    CHECK_FALSE(c.survivors.empty());
    CHECK(c.max_survivor_imag() == 0.0);
    const ComplexScan h = complex_scan(cosh_family(1.0), 200, 0.05);
    CHECK(h.max_survivor_imag() > 0.5);
}

TEST_CASE("CSV exports")
{
    std::ostringstream os;
    write_dual_csv(os, dual_estimate(chebyshev1(), {.N = 20, .grid_step = 0.5}));
    CHECK(os.str().rfind("x,max_abs_P,classification\n", 0) == 0);
    CHECK(os.str().find('\r') == std::string::npos);
    std::ostringstream oc;
    write_complex_csv(oc, complex_scan(chebyshev1(), 20, 0.5));
    CHECK(oc.str().rfind("re,im,max_abs_P\n", 0) == 0);
}
