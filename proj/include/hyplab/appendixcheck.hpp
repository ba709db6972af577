#ifndef HYPLAB_APPENDIXCHECK_HPP
#define HYPLAB_APPENDIXCHECK_HPP

#include "hyplab/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <optional>

namespace hyplab {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational::backend_type,
                                               boost::multiprecision::et_off>;

/**
 * Monic recurrence data of the Karlin-McGregor polynomials K^{(alpha,beta)}
 * (c_odd = 1/alpha, c_even = 1/beta) and of the KM59 sequence with
 * P~_1 = beta x / (beta - 1). Only the first coefficient differs.
 */
template <class Scalar>
struct KMMonic {
    Scalar alpha;
    Scalar beta;

    Scalar lambda(int n) const
    {
        if (n == 1)
            return Scalar(1) / alpha;
        return n % 2 == 0 ? (alpha - 1) / (alpha * beta) : (beta - 1) / (alpha * beta);
    }
    Scalar lambda_tilde(int n) const { return n == 1 ? (beta - 1) / (alpha * beta) : lambda(n); }

    /// sigma_{n+2}(1) / sigma_n(1) as claimed in closed form.
    Scalar ratio_closed(int n) const
    {
        return n == 0 ? (alpha - 1) / alpha : (alpha - 1) * (beta - 1) / (alpha * beta);
    }
};

/// Coefficients of (1 - x^2) s, two entries longer than s.
template <class Scalar>
VectorX<Scalar> times_one_minus_x2(const VectorX<Scalar>& s)
{
    VectorX<Scalar> r = VectorX<Scalar>::Zero(s.size() + 2);
    r.head(s.size()) = s;
    r.tail(s.size()) -= s;
    return r;
}

template <class Scalar>
Scalar eval_monomials(const VectorX<Scalar>& coeffs, const Scalar& x)
{
    Scalar v(0);
    for (Eigen::Index i = coeffs.size() - 1; i >= 0; --i)
        v = v * x + coeffs(i);
    return v;
}

/**
 * (1 - x^2) sigma*_n + sigma_{n+2} - r sigma_n as a coefficient vector, with
 * sigma from alpha_sq, sigma* from alpha_star_sq and r = sigma_{n+2}(1)/sigma_n(1)
 * unless given. Zero exactly when sigma* is the monic family of (1-x^2) dmu / a_1.
 */
template <class Scalar, class AlphaSq, class AlphaStarSq>
VectorX<Scalar> kernel_identity_defect(AlphaSq&& alpha_sq, AlphaStarSq&& alpha_star_sq, int n,
                                       std::optional<Scalar> r = std::nullopt)
{
    const VectorX<Scalar> s_n = monic_from_alpha_sq<Scalar>(alpha_sq, n);
    const VectorX<Scalar> s_n2 = monic_from_alpha_sq<Scalar>(alpha_sq, n + 2);
    const VectorX<Scalar> star = monic_from_alpha_sq<Scalar>(alpha_star_sq, n);
    if (!r)
        r = eval_monomials<Scalar>(s_n2, Scalar(1)) / eval_monomials<Scalar>(s_n, Scalar(1));
    VectorX<Scalar> d = times_one_minus_x2<Scalar>(star) + s_n2;
    d.head(n + 1) -= *r * s_n;
    return d;
}

struct KernelCheck {
    int n = 0;
    double residual = 0.0; // max |coefficient| of the defect, double arithmetic
    double scale = 0.0;    // max |coefficient| of sigma_{n+2}
    std::optional<bool> exact_zero; // set when alpha, beta are integers and n <= exact_limit
};

inline constexpr int exact_limit = 12;

/// (1 - x^2) sigma~_n = -sigma_{n+2} + r_n sigma_n with the closed r_n.
KernelCheck kernel_identity_check(double alpha, double beta, int n);
double kernel_identity_residual(double alpha, double beta, int n);

struct SigmaRatio {
    double direct;    // sigma_{n+2}(1) / sigma_n(1)
    double recursion; // sigma_{n+1}(1) / sigma_n(1) - lambda_{n+1}
    double closed;
    std::optional<bool> exact_match; // all three agree in exact arithmetic
};

SigmaRatio sigma_ratio(double alpha, double beta, int n);

/// Density of mu~ on its continuous part.
double tilde_density(double alpha, double beta, double x);
/// Mass of mu~ at 0 (zero unless alpha > beta).
double tilde_atom(double alpha, double beta);
/// Corrected KM59 psi' with p = 1 - 1/beta, q = 1/beta, p1 = 1 - 1/alpha, q1 = 1/alpha.
double km59_psi_prime(double alpha, double beta, double x);
/// tilde_density / ((1/a_1)(1 - x^2) km density) at x.
double tilde_density_ratio(double alpha, double beta, double x);

struct MuStarReport {
    int N = 0;
    Eigen::MatrixXd gram; // integral sigma~_m sigma~_n dmu*
    double max_offdiag = 0.0;
    int worst_m = 0;
    int worst_n = 0;
    double mass_error = 0.0; // |mu*(R) - 1|
};

/// Gram matrix of sigma~_0..sigma~_N under dmu* = (1/a_1)(1 - x^2) dmu_KM.
MuStarReport mustar_orthogonality(double alpha, double beta, int N);

} // namespace hyplab

#endif // HYPLAB_APPENDIXCHECK_HPP
