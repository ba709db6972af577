#ifndef HYPLAB_QUADRATURE_HPP
#define HYPLAB_QUADRATURE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hyplab {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
    double tol = 1e-10; // per entry, relative to the integral of |f|
    int min_level = 3;
    int max_level = 12;
};

struct QuadResult {
    Eigen::ArrayXXd value;
    double error = 0.0; // largest |S_L - S_{L-1}| over entries
    int level = 0;
};

/// f(x, x - lo, hi - x); the distances are exact to rounding even where x rounds to an endpoint.
using PieceIntegrand = std::function<Eigen::ArrayXXd(double, double, double)>;

/**
 * Tanh-sinh rule on (lo, hi), halving the step each level and reusing all
 * earlier nodes. Converged when every entry satisfies
 * |S_L - S_{L-1}| <= tol * integral|f| at some level >= min_level.
 */
inline QuadResult tanh_sinh(const PieceIntegrand& f, double lo, double hi, const QuadratureOptions& opt)
{
    if (!(hi > lo))
        throw std::invalid_argument("tanh_sinh: empty interval");
    constexpr double t_max = 6.0; // exp(-2u) ~ 1e-275 here; node distances stay normal doubles
    constexpr double half_pi = std::numbers::pi / 2.0;
    const double r = 0.5 * (hi - lo);

    Eigen::ArrayXXd sum, abs_sum;
    auto add_node = [&](double t) {
        const double u = half_pi * std::sinh(std::abs(t));
        const double e = std::exp(-2.0 * u);
        const double near = r * 2.0 * e / (1.0 + e); // distance to the closer endpoint
        const double far = 2.0 * r - near;
        const double w = r * half_pi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if (near <= 0.0 || w <= 0.0)
            return;
        const bool right = t >= 0.0;
        const double x = right ? hi - near : lo + near;
        Eigen::ArrayXXd v = f(x, right ? far : near, right ? near : far);
        if (sum.size() == 0) {
            sum = Eigen::ArrayXXd::Zero(v.rows(), v.cols());
            abs_sum = sum;
        }
        sum += w * v;
        abs_sum += w * v.abs();
    };

    for (int k = -static_cast<int>(t_max); k <= static_cast<int>(t_max); ++k)
        add_node(k);
    double h = 1.0;
    Eigen::ArrayXXd prev = h * sum;
    for (int level = 1; level <= opt.max_level; ++level) {
        h *= 0.5;
        const int kmax = static_cast<int>(t_max / h);
        for (int k = 1; k <= kmax; k += 2) {
            add_node(k * h);
            add_node(-k * h);
        }
        Eigen::ArrayXXd cur = h * sum;
        const Eigen::ArrayXXd diff = (cur - prev).abs();
        const double err = diff.maxCoeff();
        if (level >= opt.min_level && (diff <= opt.tol * h * abs_sum + 1e-300).all())
            return {std::move(cur), err, level};
        prev = std::move(cur);
    }
    throw QuadratureError("tanh_sinh: no convergence on (" + std::to_string(lo) + ", " + std::to_string(hi) +
                          ") by level " + std::to_string(opt.max_level));
}

} // namespace hyplab

#endif // HYPLAB_QUADRATURE_HPP
