#ifndef HYPLAB_CHEBCONNECT_HPP
#define HYPLAB_CHEBCONNECT_HPP

#include "hyplab/core.hpp"
#include "hyplab/dual.hpp"

#include <optional>

namespace hyplab {

/// P_n = sum_k C(k) T_k; C has length n + 1 and vanishes where n - k is odd.
struct ConnectionRow {
    int n = 0;
    Eigen::VectorXd C;
};

ConnectionRow connection_coeffs(const CoeffSequence& seq, int n);

/// Rows 0..N from one pass of the induction.
std::vector<ConnectionRow> connection_table(const CoeffSequence& seq, int N);

/// Chebyshev T_0..T_n as monomial coefficient columns; T(i, k) is the x^i coefficient of T_k.
Eigen::MatrixXd chebyshev_t_monomials(int n);

struct MinimaxOptions {
    int grid_points = 20001;
    int refine_top = 5;
};

/**
 * @brief Max of |P| over [-1, 1] for P given by monomial coefficients (index = power).
 *
 * Grid maximum followed by Brent (golden-section with parabolic steps) refinement around the largest
 * local maxima; the endpoints are always on the grid.
 */
double minimax_probe(const Eigen::VectorXd& coeffs, const MinimaxOptions& opt = {});

struct CriterionOptions {
    int connection_depth = 100; // modkm(8,5) first turns negative at n = 31
    double connection_tol = 1e-12;
    int nlp_depth = 30;
    DualOptions dual;
    int spectrum_N = 400;
    double spectral_gap_tol = 0.05;
    int tail_N = 500; // limits are judged on [tail_N, 2 tail_N]
    double tail_tol = 1e-8;
};

/**
 * @brief Which sufficient conditions for h(n) >= 2 the prefix data supports.
 *
 * dual_full and connection_nonneg need no NLP. The remaining predicates
 * only imply h >= 2 for hypergroups, so they enter the prediction together
 * with nlp_prefix. Everything here is finite-prefix evidence: a true
 * predicate is never a proof, a false one can be a truncation artifact.
 */
struct CriterionReport {
    int N = 0;
    bool nlp_prefix = false;
    bool dual_full = false;
    bool connection_nonneg = false;
    double min_connection = 0.0;
    bool uniform_bound = false;
    bool support_symmetric_interval = false;
    double largest_spectral_gap = 0.0;
    bool c_convergent = false;
    std::optional<double> c_limit;
    bool nevai = false;
    std::optional<double> nevai_b;
    bool haar_ge_2_prediction = false;
};

CriterionReport criterion_report(const CoeffSequence& seq, const CriterionOptions& opt = {});

/// Limit of f on [N, 2N] when it moves by at most tol there (compared with f(2N)).
std::optional<double> tail_limit(const std::function<double(int)>& f, int N, double tol);

} // namespace hyplab

#endif // HYPLAB_CHEBCONNECT_HPP
