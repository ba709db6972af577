#include "hyplab/measures.hpp"

#include "hyplab/families.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <ostream>

namespace hyplab {

namespace {

using Weight = std::function<double(double, double, double)>;

constexpr double pi = std::numbers::pi;

/// w(u, u - u_in, u_out - u) on (u_in, u_out) with 0 <= u_in, mirrored onto (-u_out, -u_in).
void add_mirrored(MeasureSpec& mu, double u_in, double u_out, const Weight& w)
{
    mu.pieces.push_back({-u_out, -u_in, [w](double x, double dlo, double dhi) { return w(-x, dhi, dlo); }});
    mu.pieces.push_back({u_in, u_out, w});
    if (u_in == 0.0)
        mu.support.emplace_back(-u_out, u_out);
    else {
        mu.support.emplace_back(-u_out, -u_in);
        mu.support.emplace_back(u_in, u_out);
    }
}

void km_density(MeasureSpec& mu, double alpha, double beta)
{
    const KMParams p = km_params(alpha, beta);
    const double g1 = p.gamma1, g2 = p.gamma2;
    const double gap = 1.0 - g1; // 1 - x = gap + (g1 - x) keeps 1 - x^2 accurate when g1 = 1
    if (alpha == beta) {
        add_mirrored(mu, 0.0, g1, [=](double u, double, double dout) {
            return alpha * std::sqrt((g1 + u) * dout) / (2.0 * pi * (gap + dout) * (1.0 + u));
        });
        return;
    }
    add_mirrored(mu, g2, g1, [=](double u, double din, double dout) {
        return beta * std::sqrt((g1 + u) * dout * din * (u + g2)) / (2.0 * pi * u * (gap + dout) * (1.0 + u));
    });
    if (alpha > beta)
        mu.atoms.push_back({0.0, (alpha - beta) / alpha});
}

void modkm_density(MeasureSpec& mu, double alpha, double beta)
{
    const KMParams p = km_params(alpha, beta);
    const double g1 = p.gamma1, g2 = p.gamma2;
    // 1 - g1 u = (1 - g1) + g1 (1 - u)
    auto one_minus_g1u = [g1](double dout) { return (1.0 - g1) + g1 * dout; };
    if (alpha == beta) {
        add_mirrored(mu, 0.0, 1.0, [=](double u, double, double dout) {
            return alpha * g1 * g1 * std::sqrt(dout * (1.0 + u)) /
                   (2.0 * pi * one_minus_g1u(dout) * (1.0 + g1 * u));
        });
        return;
    }
    const double edge = g2 / g1;
    add_mirrored(mu, edge, 1.0, [=](double u, double din, double dout) {
        return beta * g1 * std::sqrt(dout * (1.0 + u) * g1 * g1 * din * (u + edge)) /
               (2.0 * pi * u * one_minus_g1u(dout) * (1.0 + g1 * u));
    });
    if (alpha > beta)
        mu.atoms.push_back({0.0, (alpha - beta) / alpha});
}

} // namespace

std::string_view status_name(MeasureStatus s)
{
    switch (s) {
    case MeasureStatus::full: return "full";
    case MeasureStatus::density_unknown: return "density_unknown";
    case MeasureStatus::atoms_unknown: return "atoms_unknown";
    }
    return "unknown";
}

double MeasureSpec::density(double x) const
{
    for (const auto& piece : pieces)
        if (x > piece.lo && x < piece.hi)
            return piece.weight(x, x - piece.lo, piece.hi - x);
    return 0.0;
}

bool MeasureSpec::in_support(double x, double slack) const
{
    for (const auto& [a, b] : support)
        if (x >= a - slack && x <= b + slack)
            return true;
    for (const auto& atom : atoms)
        if (std::abs(x - atom.location) <= slack)
            return true;
    return false;
}

MeasureSpec measure_of(const CoeffSequence& seq)
{
    MeasureSpec mu;
    mu.tag = seq.family();
    mu.params = seq.params();
    switch (seq.family()) {
    case Family::chebyshev1:
        add_mirrored(mu, 0.0, 1.0, [](double u, double, double dout) {
            return 1.0 / (pi * std::sqrt((1.0 + u) * dout));
        });
        break;
    case Family::gencheb: {
        const double al = seq.param("alpha"), be = seq.param("beta");
        const double C = std::exp(std::lgamma(al + be + 2.0) - std::lgamma(al + 1.0) - std::lgamma(be + 1.0));
        add_mirrored(mu, 0.0, 1.0, [=](double u, double din, double dout) {
            return C * std::pow((1.0 + u) * dout, al) * std::pow(din, 2.0 * be + 1.0);
        });
        break;
    }
    case Family::cosh: {
        const double r = 1.0 / std::cosh(seq.param("a"));
        add_mirrored(mu, 0.0, r, [r](double u, double, double dout) {
            return 1.0 / (pi * std::sqrt((r + u) * dout));
        });
        break;
    }
    case Family::grinspun:
        mu.support.emplace_back(-1.0, 1.0);
        mu.status = MeasureStatus::density_unknown;
        break;
    case Family::km:
        km_density(mu, seq.param("alpha"), seq.param("beta"));
        break;
    case Family::modkm:
        modkm_density(mu, seq.param("alpha"), seq.param("beta"));
        break;
    case Family::thm32:
        modkm_density(mu, 2.0, 5.0);
        break;
    case Family::convex:
        // Pure point measure on {+-1} and +-x_n; masses are not available in closed form.
        mu.status = MeasureStatus::atoms_unknown;
        break;
    case Family::custom:
        throw UnsupportedFamilyError("measure_of: no measure known for custom sequences");
    }
    return mu;
}

QuadResult integrate(const MeasureSpec& mu, const std::function<Eigen::ArrayXXd(double)>& f,
                     const QuadratureOptions& opt)
{
    if (!mu.has_density())
        throw MissingDensityError("integrate: measure status is " + std::string(status_name(mu.status)));
    QuadResult total;
    for (const auto& piece : mu.pieces) {
        const auto& w = piece.weight;
        QuadResult part = tanh_sinh([&](double x, double dlo, double dhi) -> Eigen::ArrayXXd {
            return w(x, dlo, dhi) * f(x);
        }, piece.lo, piece.hi, opt);
        if (total.value.size() == 0)
            total.value = Eigen::ArrayXXd::Zero(part.value.rows(), part.value.cols());
        total.value += part.value;
        total.error += part.error;
        total.level = std::max(total.level, part.level);
    }
    for (const auto& atom : mu.atoms) {
        Eigen::ArrayXXd v = atom.mass * f(atom.location);
        if (total.value.size() == 0)
            total.value = Eigen::ArrayXXd::Zero(v.rows(), v.cols());
        total.value += v;
    }
    return total;
}

Integral inner_product(const MeasureSpec& mu, const std::function<double(double)>& f,
                       const std::function<double(double)>& g, const QuadratureOptions& opt)
{
    const QuadResult r = integrate(mu, [&](double x) {
        return Eigen::ArrayXXd::Constant(1, 1, f(x) * g(x));
    }, opt);
    return {r.value(0, 0), r.error};
}

double total_mass(const MeasureSpec& mu, const QuadratureOptions& opt)
{
    return inner_product(mu, [](double) { return 1.0; }, [](double) { return 1.0; }, opt).value;
}

Eigen::MatrixXd gram_matrix(const CoeffSequence& seq, const MeasureSpec& mu, int N, Normalization norm,
                            const QuadratureOptions& opt)
{
    const Recurrence rec = recurrence(seq, std::max(N, 1));
    auto basis = [&](double x) -> Eigen::VectorXd {
        switch (norm) {
        case Normalization::P: return eval_P(rec, N, x);
        case Normalization::orthonormal: return eval_orthonormal(rec, N, x);
        case Normalization::monic: return eval_monic(rec, N, x);
        }
        return {};
    };
    const QuadResult r = integrate(mu, [&](double x) -> Eigen::ArrayXXd {
        const Eigen::VectorXd v = basis(x);
        return (v * v.transpose()).array();
    }, opt);
    return r.value.matrix();
}

OrthogonalityReport orthogonality_check(const CoeffSequence& seq, int N, double tol, const QuadratureOptions& opt)
{
    const MeasureSpec mu = measure_of(seq);
    const Eigen::MatrixXd G = gram_matrix(seq, mu, N, Normalization::P, opt);
    const HaarWeights h(seq);
    OrthogonalityReport rep;
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; n <= N; ++n) {
            const double expected = m == n ? 1.0 / h(n) : 0.0;
            const double err = std::abs(G(m, n) - expected);
            if (err > rep.max_error) {
                rep.max_error = err;
                rep.worst_m = m;
                rep.worst_n = n;
            }
        }
    }
    rep.pass = rep.max_error <= tol;
    return rep;
}

Eigen::MatrixXd quadrature_linearization(const CoeffSequence& seq, int N, const QuadratureOptions& opt)
{
    const MeasureSpec mu = measure_of(seq);
    const int K = 2 * N;
    const Recurrence rec = recurrence(seq, std::max(K, 1));
    const QuadResult r = integrate(mu, [&](double x) -> Eigen::ArrayXXd {
        const Eigen::VectorXd p = eval_orthonormal(rec, K, x);
        const Eigen::VectorXd head = p.head(N + 1);
        Eigen::VectorXd pairs(static_cast<Eigen::Index>(N + 1) * (N + 1));
        for (int m = 0; m <= N; ++m)
            pairs.segment(static_cast<Eigen::Index>(m) * (N + 1), N + 1) = p(m) * head;
        return (pairs * p.transpose()).array();
    }, opt);

    // k > m + n vanishes by degree. Scaling the quadrature noise there by
    // sqrt(h(k)/(h(m)h(n))) would only manufacture large spurious entries.
    const HaarWeights h(seq);
    Eigen::MatrixXd g = r.value.matrix();
    for (int m = 0; m <= N; ++m)
        for (int n = 0; n <= N; ++n)
            for (int k = 0; k <= K; ++k)
                g(m * (N + 1) + n, k) = k > m + n ? 0.0 : g(m * (N + 1) + n, k) * std::sqrt(h(k) / (h(m) * h(n)));
    return g;
}

JacobiSpectrum jacobi_spectrum(const CoeffSequence& seq, int N)
{
    if (N < 2)
        throw std::invalid_argument("jacobi_spectrum: N must be >= 2");
    const Eigen::ArrayXd al = alpha_vector(recurrence(seq, N - 1));
    const Eigen::VectorXd diag = Eigen::VectorXd::Zero(N);
    const Eigen::VectorXd off = al.segment(1, N - 1).matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("jacobi_spectrum: tridiagonal QL iteration did not converge");
    return {N, solver.eigenvalues()};
}

void write_density_csv(std::ostream& os, const MeasureSpec& mu, const Eigen::VectorXd& xs)
{
    os << "x,density\n";
    os.precision(17);
    for (Eigen::Index i = 0; i < xs.size(); ++i)
        os << xs(i) << ',' << mu.density(xs(i)) << '\n';
}

} // namespace hyplab
