#include "hyplab/report.hpp"
#include "hyplab/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

using namespace hyplab;

namespace {

RunConfig config(const std::string& family)
{
    RunConfig c;
    c.family = family;
    return c;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("report for modified KM(2,5)")
{
    const FamilyReport r = family_report(config("modkm:alpha=2,beta=5"));
    CHECK(r.failed.empty());
    CHECK(r.doc["haar"][1].get<double>() == doctest::Approx(1.8).epsilon(1e-14));
    const auto& iv = r.doc["dual"]["intervals"];
    REQUIRE(iv.size() == 2);
    CHECK(iv[0][0].get<double>() == -1.0);
    CHECK(iv[0][1].get<double>() == doctest::Approx(-1.0 / 3.0).epsilon(1e-3));
    CHECK(iv[1][0].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
    for (const auto& c : r.doc["checks"])
        CHECK(c.contains("tol"));
}

TEST_CASE("report for cosh a = 1")
{
    const FamilyReport r = family_report(config("cosh:a=1"));
    CHECK(r.doc["nlp"]["is_nonnegative"].get<bool>());
    CHECK(r.doc["haar"][2].get<double>() == doctest::Approx(2.0 * std::cosh(2.0) * std::cosh(2.0)).epsilon(1e-12));
    CHECK(r.failed.empty());
}

TEST_CASE("NLP failure is a finding, not a failed check")
{
    const FamilyReport r = family_report(config("grinspun:c1=0.7"));
    CHECK_FALSE(r.doc["nlp"]["is_nonnegative"].get<bool>());
    CHECK(r.doc["nlp"].contains("finding"));
    CHECK(r.failed.empty());
}

TEST_CASE("reports are byte-stable")
{
    const RunConfig c = config("modkm:alpha=8,beta=5");
    CHECK(family_report(c).doc.dump() == family_report(c).doc.dump());
    std::ostringstream a, b;
    write_report_csv(a, family_report(c).doc);
    write_report_csv(b, family_report(c).doc);
    CHECK(a.str() == b.str());
    CHECK(a.str().find('\r') == std::string::npos);
}

TEST_CASE("configuration errors")
{
    RunConfig c = config("cosh:a=1");
    c.tol = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = config("cosh:a=1");
    c.max_degree = 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    CHECK_THROWS(family_report(config("nosuch:x=1")));
    CHECK_THROWS_AS(write_figure("fig9", config("")), std::invalid_argument);
}

TEST_CASE("figure data")
{
    RunConfig c;
    c.out = std::filesystem::temp_directory_path() / "hyplab_fig_test";
    std::filesystem::remove_all(c.out);
    c.grid_step = 1e-2;
    for (const char* f : {"fig1", "fig2", "fig3", "fig4"})
        write_figure(f, c);

    const std::string f1 = slurp(c.out / "fig1_region.csv");
    CHECK(f1.rfind("alpha,beta,in_V,region\n", 0) == 0);
    CHECK(f1.find("\n-0.25,-0.8333333333333334,1,1\n") != std::string::npos);

    const std::string f2 = slurp(c.out / "fig2_haar.csv");
    for (int n = 1; n <= 12; ++n)
        CHECK(f2.find("\n-0.5," + std::to_string(n) + ",2\n") != std::string::npos);

    const std::string f4 = slurp(c.out / "fig4_haar.csv");
    CHECK(f4.find("\n2,5,1,1.79999") != std::string::npos);

    const std::string atoms = slurp(c.out / "fig3_atoms.csv");
    CHECK(atoms == "alpha,beta,location,mass\n8,5,0,0.375\n");
    std::filesystem::remove_all(c.out);
}

TEST_CASE("explore flags converse failures")
{
    std::ostringstream os;
    ExploreOptions o;
    o.lo = 2.0;
    o.hi = 8.0;
    o.points = 3;
    explore_modkm(os, o);
    const std::string s = os.str();
    CHECK(s.rfind("alpha,beta,h1,min_h,nlp_prefix,dual_full,zero_in_dual,flag\n", 0) == 0);
    CHECK(s.find("counterexample_candidate") == std::string::npos);
    CHECK(s.find("\n8,5,") != std::string::npos);
}

TEST_CASE("suites map to criteria")
{
    CHECK(suite_criteria(parse_suite("all")).size() == 9);
    CHECK(suite_criteria(parse_suite("appendix")) == std::vector<int>{8});
    CHECK(suite_criteria(parse_suite("section3")) == std::vector<int>{2, 5, 6});
    CHECK(suite_name(Suite::section2) == "section2");
    CHECK_THROWS_AS(parse_suite("section9"), std::invalid_argument);
    CHECK_THROWS_AS(run_criterion(10), std::out_of_range);
}

TEST_CASE("a quick criterion runs and serializes")
{
    const CriterionResult r = run_criterion(5);
    CHECK(r.pass());
    const auto j = results_json({r});
    CHECK(j[0]["id"] == 5);
    CHECK(j[0]["pass"] == true);
    std::ostringstream os;
    print_results(os, {r});
    CHECK(os.str().rfind("[PASS] 5 ", 0) == 0);
}
