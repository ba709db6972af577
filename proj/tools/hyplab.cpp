// hyplab: family reports, figure data, verification suites, dual-space scans and exploration.
// Exit codes: 0 success, 1 configuration error, 2 a gating check or criterion failed.

#include "hyplab/dual.hpp"
#include "hyplab/families.hpp"
#include "hyplab/measures.hpp"
#include "hyplab/report.hpp"
#include "hyplab/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace hyplab;

constexpr int exit_config = 1;
constexpr int exit_failed = 2;

// Writes to stdout when path is empty or "-".
template <class F>
void with_output(const std::string& path, F&& f)
{
    if (path.empty() || path == "-") {
        f(std::cout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::invalid_argument("cannot open " + path);
    f(os);
}

int cmd_report(const RunConfig& cfg, const std::string& out)
{
    const FamilyReport r = family_report(cfg);
    with_output(out, [&](std::ostream& os) {
        if (cfg.format == "csv")
            write_report_csv(os, r.doc);
        else
            os << r.doc.dump(2) << '\n';
    });
    if (!r.failed.empty()) {
        std::cerr << "check failed: " << r.failed.front() << '\n';
        return exit_failed;
    }
    return 0;
}

int cmd_figure(const std::string& which, const RunConfig& cfg)
{
    const std::vector<std::string> ids =
        which == "all" ? std::vector<std::string>{"fig1", "fig2", "fig3", "fig4"} : std::vector<std::string>{which};
    for (const auto& id : ids)
        for (const auto& p : write_figure(id, cfg))
            std::cerr << "wrote " << p.string() << '\n';
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& format, bool verbose)
{
    const Suite s = parse_suite(suite);
    std::vector<CriterionResult> results;
    for (int id : suite_criteria(s)) {
        results.push_back(run_criterion(id));
        if (format != "json")
            print_results(std::cout, {results.back()}, verbose);
    }
    if (format == "json")
        std::cout << nlohmann::json{{"suite", std::string(suite_name(s))}, {"criteria", results_json(results)}}.dump(2)
                  << '\n';
    for (const auto& r : results) {
        if (!r.pass()) {
            std::cerr << "criterion failed: " << r.id << " " << r.title << '\n';
            return exit_failed;
        }
    }
    return 0;
}

int cmd_dual(const RunConfig& cfg, const std::string& out, bool complex_grid)
{
    const CoeffSequence seq = make_family(cfg.family);
    with_output(out, [&](std::ostream& os) {
        if (complex_grid)
            write_complex_csv(os, complex_scan(seq, cfg.dual_N, cfg.grid_step));
        else
            write_dual_csv(os, dual_estimate(seq, {.N = cfg.dual_N, .grid_step = cfg.grid_step}));
    });
    return 0;
}

int cmd_density(const RunConfig& cfg, const std::string& out)
{
    const MeasureSpec mu = measure_of(make_family(cfg.family));
    if (!mu.has_density())
        throw MissingDensityError(cfg.family + ": measure has no explicit density (" +
                                  std::string(status_name(mu.status)) + ")");
    const int steps = static_cast<int>(std::llround(2.0 / cfg.grid_step));
    Eigen::VectorXd xs(steps + 1);
    for (int i = 0; i <= steps; ++i)
        xs(i) = i == steps ? 1.0 : -1.0 + i * cfg.grid_step;
    with_output(out, [&](std::ostream& os) { write_density_csv(os, mu, xs); });
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Symmetric orthogonal polynomial sequences and their polynomial hypergroups"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string out;
    std::string figure = "all";
    std::string suite = "all";
    bool verbose = false;
    bool complex_grid = false;
    ExploreOptions explore;

    auto* report = app.add_subcommand("report", "JSON or CSV report for one family");
    report->add_option("--family", cfg.family, "family spec, e.g. modkm:alpha=2,beta=5")->required();
    report->add_option("--max-degree", cfg.max_degree, "Haar list length and NLP audit depth")->capture_default_str();
    report->add_option("--grid-step", cfg.grid_step, "dual grid step")->capture_default_str();
    report->add_option("--tol", cfg.tol, "NLP tolerance")->capture_default_str();
    report->add_option("--out", out, "output file (stdout if omitted)");
    report->add_option("--format", cfg.format, "json or csv")->capture_default_str();

    auto* fig = app.add_subcommand("figure", "CSV data behind the figures");
    fig->add_option("--figure", figure, "fig1, fig2, fig3, fig4 or all")->capture_default_str();
    fig->add_option("--out", cfg.out, "output directory")->capture_default_str();
    fig->add_option("--grid-step", cfg.grid_step, "density sampling step for fig3")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run an acceptance suite");
    verify->add_option("--suite", suite, "all, section1, section2, section3, appendix or section4")
        ->capture_default_str();
    std::string verify_format = "text";
    verify->add_option("--format", verify_format, "text or json")->capture_default_str();
    verify->add_flag("-v,--verbose", verbose, "list every check");

    auto* dual = app.add_subcommand("dual", "dual-space grid estimate as CSV");
    dual->add_option("--family", cfg.family, "family spec")->required();
    dual->add_option("--max-degree", cfg.dual_N, "largest degree N")->capture_default_str();
    dual->add_option("--grid-step", cfg.grid_step, "grid step")->capture_default_str();
    dual->add_option("--out", out, "output file (stdout if omitted)");
    dual->add_flag("--complex", complex_grid, "scan the complex rectangle instead (default step 4e-3 applies if "
                                              "--grid-step is left at its real-axis default)");

    auto* density = app.add_subcommand("density", "sampled orthogonality density as CSV");
    density->add_option("--family", cfg.family, "family spec")->required();
    density->add_option("--grid-step", cfg.grid_step, "sampling step")->capture_default_str();
    density->add_option("--out", out, "output file (stdout if omitted)");

    auto* expl = app.add_subcommand("explore", "sweep modified KM(alpha, beta) for h < 2 with a full dual");
    expl->add_option("--lo", explore.lo, "smallest alpha and beta")->capture_default_str();
    expl->add_option("--hi", explore.hi, "largest alpha and beta")->capture_default_str();
    expl->add_option("--points", explore.points, "grid points per axis")->capture_default_str();
    expl->add_option("--max-degree", explore.dual.N, "dual degree N")->capture_default_str();
    expl->add_option("--grid-step", explore.dual.grid_step, "dual grid step")->capture_default_str();
    expl->add_option("--out", out, "output file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (*report)
            return cmd_report(cfg, out);
        if (*fig)
            return cmd_figure(figure, cfg);
        if (*verify) {
            if (verify_format != "text" && verify_format != "json")
                throw std::invalid_argument("verify: format must be text or json");
            return cmd_verify(suite, verify_format, verbose);
        }
        if (*dual) {
            if (complex_grid && cfg.grid_step == RunConfig{}.grid_step)
                cfg.grid_step = 4e-3;
            cfg.validate();
            return cmd_dual(cfg, out, complex_grid);
        }
        if (*density) {
            cfg.validate();
            return cmd_density(cfg, out);
        }
        if (*expl) {
            with_output(out, [&](std::ostream& os) { explore_modkm(os, explore); });
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    return exit_config;
}
