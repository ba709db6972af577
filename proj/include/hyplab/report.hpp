#ifndef HYPLAB_REPORT_HPP
#define HYPLAB_REPORT_HPP

#include "hyplab/core.hpp"
#include "hyplab/dual.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyplab {

struct RunConfig {
    std::string family;
    int max_degree = 30;     // haar list length and NLP audit depth
    double grid_step = 2e-4; // dual grid
    double tol = 1e-12;      // NLP tolerance
    int dual_N = 400;
    std::filesystem::path out = ".";
    std::string format = "json"; // json | csv

    /// Throws std::invalid_argument on nonpositive tolerances or degree bounds below 2.
    void validate() const;
};

struct FamilyReport {
    nlohmann::json doc;
    std::vector<std::string> failed; // gating checks that failed, in report order
};

/**
 * Haar values, NLP audit, criterion predicates, dual estimate and measure
 * checks for one family. NLP failure is recorded as a finding and never
 * lands in failed; support containment only gates when the NLP prefix holds.
 */
FamilyReport family_report(const RunConfig& cfg);

/// Flat "section,key,value,tol,pass" rendering of a report.
void write_report_csv(std::ostream& os, const nlohmann::json& doc);

/// Writes the CSV data behind one figure (fig1..fig4) into cfg.out; returns the files written.
std::vector<std::filesystem::path> write_figure(const std::string& which, const RunConfig& cfg);

struct ExploreOptions {
    double lo = 2.0; // alpha and beta range over [lo, hi] on a square grid
    double hi = 12.0;
    int points = 32;
    int haar_depth = 50;
    DualOptions dual{.N = 400, .grid_step = 1e-3};
};

/**
 * Sweep of modified KM(alpha, beta) recording min h(n), NLP prefix and dual
 * shape. A row with dual_full and min_h < 2 would contradict the h >= 2
 * theorem and is flagged as a counterexample candidate.
 */
void explore_modkm(std::ostream& os, const ExploreOptions& opt);

} // namespace hyplab

#endif // HYPLAB_REPORT_HPP
