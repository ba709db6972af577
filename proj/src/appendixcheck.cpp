#include "hyplab/appendixcheck.hpp"

#include "hyplab/families.hpp"
#include "hyplab/measures.hpp"

#include <cmath>
#include <numbers>

namespace hyplab {

namespace {

constexpr double pi = std::numbers::pi;

bool is_integer(double v)
{
    return std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e9;
}

template <class Scalar>
VectorX<Scalar> km_defect(const KMMonic<Scalar>& km, int n)
{
    return kernel_identity_defect<Scalar>([&](int k) { return km.lambda(k); },
                                          [&](int k) { return km.lambda_tilde(k); }, n,
                                          std::optional<Scalar>(km.ratio_closed(n)));
}

template <class Scalar>
Scalar sigma_at_one(const KMMonic<Scalar>& km, int n)
{
    Scalar prev(0), cur(1);
    for (int k = 0; k < n; ++k) {
        const Scalar next = k == 0 ? cur : cur - km.lambda(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void require_km(double alpha, double beta)
{
    if (!(alpha >= 2.0 && beta >= 2.0))
        throw ParameterDomainError("appendix checks require alpha >= 2 and beta >= 2");
}

} // namespace

KernelCheck kernel_identity_check(double alpha, double beta, int n)
{
    require_km(alpha, beta);
    if (n < 0)
        throw std::invalid_argument("kernel_identity_check: n must be >= 0");
    KernelCheck out;
    out.n = n;
    const KMMonic<double> km{alpha, beta};
    out.residual = km_defect(km, n).cwiseAbs().maxCoeff();
    out.scale = monic_from_alpha_sq<double>([&](int k) { return km.lambda(k); }, n + 2).cwiseAbs().maxCoeff();
    if (is_integer(alpha) && is_integer(beta) && n <= exact_limit) {
        const KMMonic<Rational> exact{Rational(static_cast<long>(alpha)), Rational(static_cast<long>(beta))};
        const VectorX<Rational> d = km_defect(exact, n);
        out.exact_zero = std::all_of(d.data(), d.data() + d.size(), [](const Rational& v) { return v == 0; });
    }
    return out;
}

double kernel_identity_residual(double alpha, double beta, int n)
{
    return kernel_identity_check(alpha, beta, n).residual;
}

SigmaRatio sigma_ratio(double alpha, double beta, int n)
{
    require_km(alpha, beta);
    if (n < 0)
        throw std::invalid_argument("sigma_ratio: n must be >= 0");
    const KMMonic<double> km{alpha, beta};
    const double s0 = sigma_at_one(km, n), s1 = sigma_at_one(km, n + 1), s2 = sigma_at_one(km, n + 2);
    SigmaRatio out{s2 / s0, s1 / s0 - km.lambda(n + 1), km.ratio_closed(n), std::nullopt};
    if (is_integer(alpha) && is_integer(beta) && n <= exact_limit) {
        const KMMonic<Rational> ex{Rational(static_cast<long>(alpha)), Rational(static_cast<long>(beta))};
        const Rational e0 = sigma_at_one(ex, n), e1 = sigma_at_one(ex, n + 1), e2 = sigma_at_one(ex, n + 2);
        const Rational direct = e2 / e0;
        out.exact_match = direct == e1 / e0 - ex.lambda(n + 1) && direct == ex.ratio_closed(n);
    }
    return out;
}

double tilde_density(double alpha, double beta, double x)
{
    const KMParams p = km_params(alpha, beta);
    const double ax = std::abs(x);
    if (alpha == beta)
        return ax < p.gamma1 ? alpha * alpha * std::sqrt(p.gamma1 * p.gamma1 - x * x) / (2.0 * pi * (alpha - 1.0))
                             : 0.0;
    if (ax <= p.gamma2 || ax >= p.gamma1)
        return 0.0;
    return alpha * beta * std::sqrt((p.gamma1 * p.gamma1 - x * x) * (x * x - p.gamma2 * p.gamma2)) /
           (2.0 * pi * (alpha - 1.0) * ax);
}

double tilde_atom(double alpha, double beta)
{
    return alpha > beta ? (alpha - beta) / (alpha - 1.0) : 0.0;
}

double km59_psi_prime(double alpha, double beta, double x)
{
    const double p = 1.0 - 1.0 / beta, q = 1.0 / beta;
    const double p1 = 1.0 - 1.0 / alpha, q1 = 1.0 / alpha;
    const double u = x * x - p * q1 + p1 * q;
    const double rad = 4.0 * p1 * q * x * x - u * u;
    if (!(rad > 0.0) || x == 0.0)
        return 0.0;
    return std::sqrt(rad) / (2.0 * pi * p1 * q * std::abs(x));
}

double tilde_density_ratio(double alpha, double beta, double x)
{
    const MeasureSpec mu = measure_of(karlin_mcgregor(alpha, beta));
    const double a1 = 1.0 - 1.0 / alpha;
    return tilde_density(alpha, beta, x) / ((1.0 - x * x) / a1 * mu.density(x));
}

MuStarReport mustar_orthogonality(double alpha, double beta, int N)
{
    require_km(alpha, beta);
    if (N < 1)
        throw std::invalid_argument("mustar_orthogonality: N must be >= 1");
    const MeasureSpec mu = measure_of(karlin_mcgregor(alpha, beta));
    const KMMonic<double> km{alpha, beta};
    const double a1 = 1.0 - 1.0 / alpha;
    const QuadResult r = integrate(mu, [&](double x) -> Eigen::ArrayXXd {
        Eigen::VectorXd s(N + 1);
        s(0) = 1.0;
        s(1) = x;
        for (int k = 1; k < N; ++k)
            s(k + 1) = x * s(k) - km.lambda_tilde(k) * s(k - 1);
        return ((1.0 - x * x) / a1 * (s * s.transpose())).array();
    });
    MuStarReport rep;
    rep.N = N;
    rep.gram = r.value.matrix();
    rep.mass_error = std::abs(rep.gram(0, 0) - 1.0);
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) {
            if (m != n && std::abs(rep.gram(m, n)) > rep.max_offdiag) {
                rep.max_offdiag = std::abs(rep.gram(m, n));
                rep.worst_m = m;
                rep.worst_n = n;
            }
        }
    }
    return rep;
}

} // namespace hyplab
