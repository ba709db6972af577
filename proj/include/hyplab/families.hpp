#ifndef HYPLAB_FAMILIES_HPP
#define HYPLAB_FAMILIES_HPP

#include "hyplab/core.hpp"

#include <functional>
#include <string>
#include <string_view>

namespace hyplab {

class SpecParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parsed form of "tag:key=value,..." with decimal or p/q literals.
struct FamilySpec {
    Family tag = Family::custom;
    ParamList params;
    bool unchecked = false;
};

FamilySpec parse_family_spec(std::string_view text);
std::string format_family_spec(const FamilySpec& spec);
double parse_number(std::string_view text);

CoeffSequence make_family(const FamilySpec& spec);
CoeffSequence make_family(std::string_view text);

CoeffSequence chebyshev1();
CoeffSequence generalized_chebyshev(double alpha, double beta, bool unchecked = false);
CoeffSequence cosh_family(double a);
CoeffSequence grinspun(double c1);
CoeffSequence karlin_mcgregor(double alpha, double beta, bool unchecked = false);
CoeffSequence modified_km(double alpha, double beta, bool unchecked = false);
CoeffSequence thm32_family();

struct KMParams {
    double alpha;
    double beta;
    double gamma1;
    double gamma2;
};

KMParams km_params(double alpha, double beta);

/**
 * @brief Convex null sequence s_n and the derived lambda_n.
 *
 * lambda_{2k} = 1 - s_k, lambda_{2k+1} = s_{k+1} - s_{k+2}.
 */
struct ConvexSeqSpec {
    std::function<double(int)> s;
    std::string description;

    double lambda(int n) const;
    /// 1 - lambda_{n-1} - lambda_n without cancellation, n >= 1.
    double gap(int n) const;

    static ConvexSeqSpec geometric(double s0, double q);
};

/// Throws ParameterDomainError if the probed prefix violates any ConvexSeqSpec invariant.
void validate_convex(const ConvexSeqSpec& spec, int probe = 200);

/// Orthonormal-at-1 values Q_n(1) for n <= N, long double accumulation.
Eigen::VectorXd convex_q_at_one(const ConvexSeqSpec& spec, int N);

CoeffSequence convex_family(const ConvexSeqSpec& spec, ParamList params = {});
CoeffSequence convex_family_for_epsilon(double eps, double q = 0.5);

bool has_closed_form_haar(Family tag);
double closed_form_haar(Family tag, const ParamList& params, int n);
double closed_form_haar(const CoeffSequence& seq, int n);

bool in_V(double alpha, double beta);
bool h1_lt_2_region(double alpha, double beta);
double beta_for_epsilon(double eps);
double s0_for_epsilon(double eps);

/// U_n(y) by its own recurrence, U_{-1} = 0.
double chebyshev_u(int n, double y);

struct OddEvenPair {
    double odd;  // P_{2n-1}(x)
    double even; // P_{2n}(x)
};

/// Modified Karlin-McGregor polynomials with alpha = 2 via Chebyshev-U, n >= 1.
OddEvenPair km_special_closed_forms(double beta, int n, double x);
/// Unmodified K_n^{(2,beta)} via the sieved-polynomial representation, n >= 1.
OddEvenPair km_sieved_closed_forms(double beta, int n, double x);

} // namespace hyplab

#endif // HYPLAB_FAMILIES_HPP
