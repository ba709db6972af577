#include "hyplab/report.hpp"

#include "hyplab/chebconnect.hpp"
#include "hyplab/families.hpp"
#include "hyplab/linearization.hpp"
#include "hyplab/measures.hpp"
#include "hyplab/parallel.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace hyplab {

namespace {

using nlohmann::json;

constexpr double haar_tol = 1e-10;
constexpr double row_sum_tol = 1e-9;
constexpr double mass_tol = 1e-8;
constexpr double orthogonality_tol = 1e-7;
constexpr double oracle_tol = 1e-8;
constexpr int oracle_degree = 12;

// Shortest round-trip form; independent of the global locale.
std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

class CheckList {
public:
    json& add(const std::string& name, bool pass, double value, double tol)
    {
        if (!pass)
            failed_.push_back(name);
        checks_.push_back({{"name", name}, {"pass", pass}, {"value", value}, {"tol", tol}});
        return checks_.back();
    }
    json take() { return std::move(checks_); }
    std::vector<std::string>& failed() { return failed_; }

private:
    json checks_ = json::array();
    std::vector<std::string> failed_;
};

json intervals_json(const std::vector<Interval>& iv)
{
    json out = json::array();
    for (const auto& i : iv)
        out.push_back({i.lo, i.hi});
    return out;
}

std::ofstream open_csv(const std::filesystem::path& p)
{
    std::ofstream os(p, std::ios::binary); // binary keeps LF line endings everywhere
    if (!os)
        throw std::runtime_error("cannot write " + p.string());
    return os;
}

std::vector<double> haar_prefix(const CoeffSequence& seq, int N, bool& truncated)
{
    std::vector<double> h;
    truncated = false;
    for (int n = 0; n <= N; ++n) {
        try {
            h.push_back(haar(seq, n));
        } catch (const HaarRangeError&) {
            truncated = true;
            break;
        }
    }
    return h;
}

} // namespace

void RunConfig::validate() const
{
    if (max_degree < 2)
        throw std::invalid_argument("max-degree must be >= 2");
    if (dual_N < 10)
        throw std::invalid_argument("dual degree must be >= 10");
    if (!(grid_step > 0.0) || grid_step > 1.0)
        throw std::invalid_argument("grid-step must be in (0, 1]");
    if (!(tol > 0.0))
        throw std::invalid_argument("tol must be > 0");
    if (format != "json" && format != "csv")
        throw std::invalid_argument("format must be json or csv");
}

FamilyReport family_report(const RunConfig& cfg)
{
    cfg.validate();
    const FamilySpec spec = parse_family_spec(cfg.family);
    const CoeffSequence seq = make_family(spec);
    CheckList checks;
    json doc;

    json params = json::object();
    for (const auto& [k, v] : seq.params())
        params[k] = v;
    doc["family"] = {{"spec", format_family_spec(spec)},
                     {"tag", std::string(family_tag(seq.family()))},
                     {"params", params},
                     {"description", seq.description()}};
    doc["config"] = {{"max_degree", cfg.max_degree}, {"grid_step", cfg.grid_step}, {"tol", cfg.tol},
                     {"dual_N", cfg.dual_N}};

    bool truncated = false;
    const std::vector<double> h = haar_prefix(seq, cfg.max_degree, truncated);
    doc["haar"] = h;
    doc["haar_truncated"] = truncated;
    if (has_closed_form_haar(seq.family())) {
        double worst = 0.0;
        for (int n = 0; n < static_cast<int>(h.size()); ++n) {
            const double ref = closed_form_haar(seq, n);
            worst = std::max(worst, std::abs(h[n] - ref) / std::abs(ref));
        }
        doc["haar_closed_form"] = checks.add("haar closed form", worst <= haar_tol, worst, haar_tol);
    }

    const NlpAudit nlp = check_nlp(seq, cfg.max_degree, cfg.tol);
    doc["nlp"] = {{"N", nlp.N},
                  {"tol", nlp.tol},
                  {"is_nonnegative", nlp.is_nonnegative},
                  {"min_coeff", nlp.min_coeff},
                  {"min_witness", nlp.min_witness},
                  {"extremes_nonzero", nlp.extremes_nonzero},
                  {"min_extreme", nlp.min_extreme},
                  {"row_sum_max_error", nlp.row_sum_max_error},
                  {"evidence", "prefix"}};
    if (!nlp.is_nonnegative)
        doc["nlp"]["finding"] = "nonnegative linearization fails on the prefix; no hypergroup";
    checks.add("linearization row sums", nlp.row_sum_max_error <= row_sum_tol, nlp.row_sum_max_error, row_sum_tol);

    CriterionOptions copt;
    copt.dual.N = cfg.dual_N;
    copt.dual.grid_step = cfg.grid_step;
    const CriterionReport cr = criterion_report(seq, copt);
    doc["criteria"] = {{"N", cr.N},
                       {"evidence", "prefix"},
                       {"nlp_prefix", cr.nlp_prefix},
                       {"dual_full_interval_evidence", cr.dual_full},
                       {"connection_nonneg", cr.connection_nonneg},
                       {"min_connection", cr.min_connection},
                       {"connection_tol", copt.connection_tol},
                       {"uniform_bound", cr.uniform_bound},
                       {"support_symmetric_interval", cr.support_symmetric_interval},
                       {"largest_spectral_gap", cr.largest_spectral_gap},
                       {"spectral_gap_tol", copt.spectral_gap_tol},
                       {"c_convergent", cr.c_convergent},
                       {"c_limit", cr.c_limit ? json(*cr.c_limit) : json(nullptr)},
                       {"nevai", cr.nevai},
                       {"nevai_b", cr.nevai_b ? json(*cr.nevai_b) : json(nullptr)},
                       {"tail_tol", copt.tail_tol},
                       {"haar_ge_2_prediction", cr.haar_ge_2_prediction}};

    const DualEstimate est = dual_estimate(seq, copt.dual);
    doc["dual"] = {{"N", est.options.N},
                   {"grid_step", est.options.grid_step},
                   {"tol", est.options.tol},
                   {"divergence_threshold", est.options.divergence_threshold},
                   {"intervals", intervals_json(est.intervals)},
                   {"full_interval", est.covers_full_interval()}};

    const MeasureSpec mu = measure_of(seq);
    json m = {{"status", std::string(status_name(mu.status))}};
    json support = json::array();
    for (const auto& [a, b] : mu.support)
        support.push_back({a, b});
    m["support"] = support;
    if (mu.status != MeasureStatus::atoms_unknown) {
        json atoms = json::array();
        for (const auto& at : mu.atoms)
            atoms.push_back({at.location, at.mass});
        m["atoms"] = atoms;
    }

    // supp mu lies in the dual only for hypergroups, so containment gates on NLP.
    const std::vector<double> viol = support_violations(est, mu);
    doc["dual"]["support_violations"] = viol.size();
    if (nlp.is_nonnegative)
        checks.add("support contained in dual", viol.empty(), static_cast<double>(viol.size()), 0.0);
    else if (!viol.empty())
        doc["dual"]["finding"] = "support points outside the dual estimate; expected without NLP";

    if (mu.has_density()) {
        const double mass = total_mass(mu);
        m["total_mass"] = checks.add("total mass", std::abs(mass - 1.0) <= mass_tol, mass, mass_tol);
        const int No = std::min(oracle_degree, cfg.max_degree);
        const OrthogonalityReport o = orthogonality_check(seq, No, orthogonality_tol);
        m["orthogonality"] = checks.add("orthogonality", o.pass, o.max_error, orthogonality_tol);
        m["orthogonality"]["N"] = No;

        const Eigen::MatrixXd Q = quadrature_linearization(seq, No);
        const LinearizationTable T(seq, No);
        double worst = 0.0;
        for (int i = 0; i <= No; ++i)
            for (int j = 0; j <= No; ++j)
                for (int k = 0; k <= i + j; ++k)
                    worst = std::max(worst, std::abs(Q(i * (No + 1) + j, k) - T(i, j, k)));
        m["linearization_oracle"] = checks.add("linearization oracle", worst <= oracle_tol, worst, oracle_tol);
        m["linearization_oracle"]["N"] = No;
    } else {
        const Eigen::VectorXd ev = jacobi_spectrum(seq, cfg.dual_N).eigenvalues;
        std::vector<double> top;
        for (Eigen::Index i = ev.size() - 1; i >= 0 && static_cast<int>(top.size()) < 10; --i)
            top.push_back(ev(i));
        m["spectrum_top"] = top;
        m["spectrum_N"] = cfg.dual_N;
        m["note"] = "no explicit density; integral checks skipped";
    }
    doc["measure"] = std::move(m);

    FamilyReport out;
    out.failed = std::move(checks.failed());
    doc["checks"] = checks.take();
    doc["pass"] = out.failed.empty();
    out.doc = std::move(doc);
    return out;
}

void write_report_csv(std::ostream& os, const json& doc)
{
    os << "section,key,value,tol,pass\n";
    const auto& h = doc.at("haar");
    for (std::size_t n = 0; n < h.size(); ++n)
        os << "haar," << n << ',' << fmt(h[n].get<double>()) << ",,\n";
    const auto& nlp = doc.at("nlp");
    os << "nlp,is_nonnegative," << (nlp.at("is_nonnegative").get<bool>() ? 1 : 0) << ','
       << fmt(nlp.at("tol").get<double>()) << ",\n";
    os << "nlp,min_coeff," << fmt(nlp.at("min_coeff").get<double>()) << ',' << fmt(nlp.at("tol").get<double>())
       << ",\n";
    for (const auto& iv : doc.at("dual").at("intervals"))
        os << "dual,interval," << fmt(iv[0].get<double>()) << ' ' << fmt(iv[1].get<double>()) << ','
           << fmt(doc.at("dual").at("grid_step").get<double>()) << ",\n";
    for (const auto& c : doc.at("checks"))
        os << "check," << c.at("name").get<std::string>() << ',' << fmt(c.at("value").get<double>()) << ','
           << fmt(c.at("tol").get<double>()) << ',' << (c.at("pass").get<bool>() ? 1 : 0) << '\n';
}

std::vector<std::filesystem::path> write_figure(const std::string& which, const RunConfig& cfg)
{
    cfg.validate();
    std::filesystem::create_directories(cfg.out);
    std::vector<std::filesystem::path> written;
    constexpr std::pair<double, double> km_pairs[] = {{2.0, 5.0}, {5.0, 5.0}, {8.0, 5.0}};

    if (which == "fig1") {
        const auto p = cfg.out / "fig1_region.csv";
        auto os = open_csv(p);
        os << "alpha,beta,in_V,region\n";
        // Grid -1 + i/120 on the open square (-1, 0)^2 hits (-1/4, -5/6) exactly.
        for (int i = 1; i < 120; ++i) {
            for (int j = 1; j < 120; ++j) {
                const double a = -1.0 + i / 120.0, b = -1.0 + j / 120.0;
                const bool v = in_V(a, b);
                os << fmt(a) << ',' << fmt(b) << ',' << v << ',' << (v && a + b + 1.0 < 0.0) << '\n';
            }
        }
        written.push_back(p);
    } else if (which == "fig2") {
        const auto p = cfg.out / "fig2_haar.csv";
        auto os = open_csv(p);
        os << "alpha,n,h\n";
        for (double a : {-0.5, 0.0, 0.5}) {
            const CoeffSequence s = generalized_chebyshev(a, a);
            for (int n = 0; n <= 12; ++n)
                os << fmt(a) << ',' << n << ',' << fmt(haar(s, n)) << '\n';
        }
        written.push_back(p);
    } else if (which == "fig3") {
        const auto pd = cfg.out / "fig3_density.csv";
        const auto pa = cfg.out / "fig3_atoms.csv";
        auto od = open_csv(pd);
        auto oa = open_csv(pa);
        od << "alpha,beta,x,density\n";
        oa << "alpha,beta,location,mass\n";
        const int steps = static_cast<int>(std::llround(2.0 / cfg.grid_step));
        for (const auto& [a, b] : km_pairs) {
            const MeasureSpec mu = measure_of(modified_km(a, b));
            for (int i = 0; i <= steps; ++i) {
                const double x = i == steps ? 1.0 : -1.0 + i * cfg.grid_step;
                od << fmt(a) << ',' << fmt(b) << ',' << fmt(x) << ',' << fmt(mu.density(x)) << '\n';
            }
            for (const auto& at : mu.atoms)
                oa << fmt(a) << ',' << fmt(b) << ',' << fmt(at.location) << ',' << fmt(at.mass) << '\n';
        }
        written.push_back(pd);
        written.push_back(pa);
    } else if (which == "fig4") {
        const auto p = cfg.out / "fig4_haar.csv";
        auto os = open_csv(p);
        os << "alpha,beta,n,h\n";
        for (const auto& [a, b] : km_pairs) {
            const CoeffSequence s = modified_km(a, b);
            for (int n = 0; n <= 12; ++n)
                os << fmt(a) << ',' << fmt(b) << ',' << n << ',' << fmt(haar(s, n)) << '\n';
        }
        written.push_back(p);
    } else {
        throw std::invalid_argument("unknown figure '" + which + "' (expected fig1, fig2, fig3, fig4)");
    }
    return written;
}

void explore_modkm(std::ostream& os, const ExploreOptions& opt)
{
    if (opt.points < 1 || !(opt.lo >= 2.0) || !(opt.hi >= opt.lo))
        throw std::invalid_argument("explore: need points >= 1 and 2 <= lo <= hi");
    struct Row {
        double alpha, beta, h1, min_h;
        bool nlp, full, zero;
    };
    const int P = opt.points;
    std::vector<Row> rows(static_cast<std::size_t>(P) * P);
    auto coord = [&](int i) { return P == 1 ? opt.lo : opt.lo + (opt.hi - opt.lo) * i / (P - 1); };
    parallel_for(0, P * P, [&](int idx) {
        const double a = coord(idx / P), b = coord(idx % P);
        const CoeffSequence s = modified_km(a, b);
        double min_h = INFINITY;
        for (int n = 1; n <= opt.haar_depth; ++n)
            min_h = std::min(min_h, haar(s, n));
        const DualEstimate est = dual_estimate(s, opt.dual);
        rows[idx] = {a, b, haar(s, 1), min_h, check_nlp(s, 10).is_nonnegative, est.covers_full_interval(),
                     est.is_member(0.0)};
    });
    os << "alpha,beta,h1,min_h,nlp_prefix,dual_full,zero_in_dual,flag\n";
    for (const auto& r : rows) {
        const char* flag = r.full && r.min_h < 2.0 ? "counterexample_candidate"
                           : !r.full && r.min_h >= 2.0 ? "converse_failure"
                                                       : "";
        os << fmt(r.alpha) << ',' << fmt(r.beta) << ',' << fmt(r.h1) << ',' << fmt(r.min_h) << ',' << r.nlp << ','
           << r.full << ',' << r.zero << ',' << flag << '\n';
    }
}

} // namespace hyplab
