#ifndef HYPLAB_DUAL_HPP
#define HYPLAB_DUAL_HPP

#include "hyplab/core.hpp"
#include "hyplab/measures.hpp"

#include <array>
#include <complex>
#include <iosfwd>

namespace hyplab {

struct DualOptions {
    int N = 400;
    double grid_step = 2e-4;
    double tol = 1e-9;
    double divergence_threshold = 1e6;
};

struct Interval {
    double lo;
    double hi;
};

/**
 * @brief Grid over-approximation of the dual space: x is a member iff
 * max_{n<=N} |P_n(x)| <= 1 + tol.
 *
 * The grid is x_j = j * grid_step clipped to [-1, 1] with both endpoints
 * included; it is symmetric, so the masks are too.
 */
struct DualEstimate {
    DualOptions options;
    Eigen::VectorXd grid;
    Eigen::VectorXd max_abs;
    std::vector<bool> member;
    std::vector<bool> diverged;
    std::vector<int> onset; // first n with |P_n| > 1 + tol, -1 if none
    std::vector<Interval> intervals;

    bool covers_full_interval() const;
    bool is_member(double x) const; // nearest grid point
    Eigen::Index index_of(double x) const;
};

DualEstimate dual_estimate(const CoeffSequence& seq, const DualOptions& opt = {});

/// Maximal runs of members; a single missing grid point between two runs is closed.
std::vector<Interval> merge_runs(const Eigen::VectorXd& grid, const std::vector<bool>& member);

/// sqrt((1 - eps)/(1 + eps))
double prop31_cut(double eps);
/// [-1, -cut] and [cut, 1]
std::array<Interval, 2> prop31_bound(double eps);

enum class Membership { member_evidence, nonmember_diverged, undecided };

std::string_view membership_name(Membership m);

Membership divergence_classify(const CoeffSequence& seq, double x, int N, double threshold = 1e6,
                               double tol = 1e-9);

struct ComplexScan {
    int N = 0;
    double step = 0.0;
    double extent = 0.0;
    double tol = 0.0;
    std::vector<std::complex<double>> points;
    std::vector<double> max_abs; // capped once |P_n| passes 1 + tol
    std::vector<std::complex<double>> survivors;

    /// Largest |Im z| among survivors.
    double max_survivor_imag() const;
};

/// Square grid over [-extent, extent]^2 with spacing step.
ComplexScan complex_scan(const CoeffSequence& seq, int N, double step = 4e-3, double tol = 1e-9,
                         double extent = 1.5);

/// CSV "x,max_abs_P,classification"
void write_dual_csv(std::ostream& os, const DualEstimate& est);
/// CSV "re,im,max_abs_P"
void write_complex_csv(std::ostream& os, const ComplexScan& scan);

/// Grid points of the continuous support that are not members (containment supp mu in dual).
std::vector<double> support_violations(const DualEstimate& est, const MeasureSpec& mu);

/**
 * @brief Comparison of a grid dual estimate with truncated Jacobi spectra.
 *
 * For a discrete dual the members x_n cannot be confirmed by evaluating at
 * them: the exponential Haar growth amplifies any perturbation of x_n past
 * the double range. The match is therefore judged by
 * - every grid member lies within a grid cell of +-1 or +-eigenvalue,
 * - nothing (member or eigenvalue) lies in (-cut, cut),
 * - g(x) = max_{n<=40} |P_n(x)| has a strict local minimum on the grid within
 *   one cell of each low eigenvalue,
 * - those eigenvalues agree between truncations N/2 and N,
 * - 1 - x_k decreases strictly and the top eigenvalue is within 1e-6 of 1.
 */
struct SpectralMatch {
    int N = 0;
    double max_member_distance = 0.0;
    bool members_near_spectrum = false;
    bool gap_respected = false;
    int probed = 0;
    int localized = 0;
    double truncation_drift = 0.0; // max |x_k(N) - x_k(N/2)| over probed k
    bool accumulates_at_one = false;
    std::vector<double> positive_eigenvalues; // ascending

    bool pass() const;
};

SpectralMatch match_discrete_dual(const CoeffSequence& seq, const DualEstimate& est, double cut, int N = 400,
                                  int probe_count = 6);

} // namespace hyplab

#endif // HYPLAB_DUAL_HPP
