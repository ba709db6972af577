#ifndef HYPLAB_VERIFY_HPP
#define HYPLAB_VERIFY_HPP

#include "hyplab/core.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace hyplab {

/// One measured quantity against its threshold.
struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
    bool informational = false; // reported, never gates the criterion
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool pass() const;
};

enum class Suite { all, section1, section2, section3, appendix, section4 };

Suite parse_suite(std::string_view name);
std::string_view suite_name(Suite s);
/// Criterion ids run by a suite, ascending.
std::vector<int> suite_criteria(Suite s);

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_suite(Suite s);

/// "[PASS] 3 title (n/m checks, t s)" plus indented lines for failed and informational checks.
void print_results(std::ostream& os, const std::vector<CriterionResult>& results, bool verbose = false);
nlohmann::json results_json(const std::vector<CriterionResult>& results);

struct NamedFamily {
    std::string spec; // parseable family string
    CoeffSequence seq;
};

/// Every closed-form family exercised by the acceptance criteria.
std::vector<NamedFamily> closed_form_roster();

} // namespace hyplab

#endif // HYPLAB_VERIFY_HPP
