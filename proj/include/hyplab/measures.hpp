#ifndef HYPLAB_MEASURES_HPP
#define HYPLAB_MEASURES_HPP

#include "hyplab/core.hpp"
#include "hyplab/quadrature.hpp"

#include <iosfwd>

namespace hyplab {

/// Density on (lo, hi) as w(x, x - lo, hi - x).
struct AcPiece {
    double lo;
    double hi;
    std::function<double(double, double, double)> weight;
};

struct Atom {
    double location;
    double mass;
};

enum class MeasureStatus { full, density_unknown, atoms_unknown };

std::string_view status_name(MeasureStatus s);

/**
 * @brief Orthogonalization measure: density pieces plus atoms.
 *
 * support lists closed intervals of the continuous part; atoms are separate.
 * Only status == full allows integration.
 */
struct MeasureSpec {
    Family tag = Family::custom;
    ParamList params;
    std::vector<AcPiece> pieces;
    std::vector<Atom> atoms;
    std::vector<std::pair<double, double>> support;
    MeasureStatus status = MeasureStatus::full;

    bool has_density() const { return status == MeasureStatus::full; }
    double density(double x) const;
    bool in_support(double x, double slack = 0.0) const;
};

class MissingDensityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

MeasureSpec measure_of(const CoeffSequence& seq);

/// Integral of a matrix-valued f against the measure, atoms included.
QuadResult integrate(const MeasureSpec& mu, const std::function<Eigen::ArrayXXd(double)>& f,
                     const QuadratureOptions& opt = {});

struct Integral {
    double value;
    double error;
};

Integral inner_product(const MeasureSpec& mu, const std::function<double(double)>& f,
                       const std::function<double(double)>& g, const QuadratureOptions& opt = {});

double total_mass(const MeasureSpec& mu, const QuadratureOptions& opt = {});

/// G(m,n) = integral of b_m b_n for the chosen basis, m,n <= N.
Eigen::MatrixXd gram_matrix(const CoeffSequence& seq, const MeasureSpec& mu, int N, Normalization norm,
                            const QuadratureOptions& opt = {});

struct OrthogonalityReport {
    double max_error = 0.0;
    int worst_m = 0;
    int worst_n = 0;
    bool pass = false;
};

/// max |integral P_m P_n - delta_{mn}/h(n)| over m,n <= N.
OrthogonalityReport orthogonality_check(const CoeffSequence& seq, int N, double tol,
                                        const QuadratureOptions& opt = {});

/**
 * g(m,n;k) = h(k) integral P_m P_n P_k for m,n <= N, k <= 2N, evaluated as
 * sqrt(h(k)/(h(m)h(n))) integral p_m p_n p_k so the integrand stays O(1)
 * when h grows exponentially. Row m*(N+1)+n, column k; entries with
 * k > m + n are set to zero rather than integrated.
 */
Eigen::MatrixXd quadrature_linearization(const CoeffSequence& seq, int N, const QuadratureOptions& opt = {});

struct JacobiSpectrum {
    int N = 0;
    Eigen::VectorXd eigenvalues; // ascending
};

/// Eigenvalues of the N x N zero-diagonal Jacobi matrix with off-diagonals alpha_1..alpha_{N-1}.
JacobiSpectrum jacobi_spectrum(const CoeffSequence& seq, int N);

/// CSV with header "x,density", one row per abscissa.
void write_density_csv(std::ostream& os, const MeasureSpec& mu, const Eigen::VectorXd& xs);

} // namespace hyplab

#endif // HYPLAB_MEASURES_HPP
