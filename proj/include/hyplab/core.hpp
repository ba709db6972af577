#ifndef HYPLAB_CORE_HPP
#define HYPLAB_CORE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hyplab {

enum class Family { chebyshev1, gencheb, cosh, grinspun, km, modkm, thm32, convex, custom };

std::string_view family_tag(Family f);

/// Thrown when a recurrence coefficient leaves (0,1); carries the offending index.
class CoefficientDomainError : public std::domain_error {
public:
    CoefficientDomainError(int n, double value);
    int index() const noexcept { return index_; }

private:
    int index_;
};

class ParameterDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class HaarRangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

class DegreeOverflowError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class UnsupportedFamilyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using ParamList = std::vector<std::pair<std::string, double>>;

/**
 * @brief Recurrence coefficients c_n of x P_n = a_n P_{n+1} + c_n P_{n-1}, a_n = 1 - c_n.
 *
 * A family may supply its own a(n) when 1 - c(n) would cancel in double
 * precision. Values are validated on every access and the object is
 * immutable, so copies can be shared across threads.
 */
class CoeffSequence {
public:
    using Fn = std::function<double(int)>;

    CoeffSequence(Family tag, ParamList params, Fn c, std::string description, Fn a = {});

    static CoeffSequence custom(Fn c, std::string description);

    double c(int n) const;
    double a(int n) const;

    Family family() const noexcept { return tag_; }
    const ParamList& params() const noexcept { return params_; }
    double param(std::string_view key) const;
    const std::string& description() const noexcept { return description_; }

private:
    Family tag_;
    ParamList params_;
    Fn c_;
    Fn a_;
    std::string description_;
};

/// Coefficient arrays indexed 0..N; c(0) is unused and stored as 0, a(0) = 1.
struct Recurrence {
    Eigen::ArrayXd c;
    Eigen::ArrayXd a;

    int degree() const { return static_cast<int>(c.size()) - 1; }
};

Recurrence recurrence(const CoeffSequence& seq, int N);

enum class Normalization { P, orthonormal, monic };

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
struct EvalRow {
    Scalar x;
    VectorX<Scalar> values;
    Normalization normalization;
};

double alpha(const CoeffSequence& seq, int n);

/// alpha_n for n = 1..N stored at index n; entry 0 is unused.
Eigen::ArrayXd alpha_vector(const Recurrence& rec);

namespace detail {

template <class Scalar>
bool left_half(const Scalar& x)
{
    if constexpr (std::is_arithmetic_v<Scalar>)
        return x < 0;
    else
        return std::real(x) < 0;
}

} // namespace detail

namespace detail {

/**
 * Forward stepper for P_n at a point y with Re y >= 0.
 *
 * Near 1 it uses the difference form D_{n+1} = ((y-1) P_n + c_n D_n) / a_n,
 * P_{n+1} = P_n + D_{n+1}: the same recurrence, but P_n(1) = 1 comes out
 * exactly and the y ~ 1 regime does not cancel. Near 0 the plain form
 * P_{n+1} = (y P_n - c_n P_{n-1}) / a_n is used instead, because there the
 * difference form couples the even and odd chains and rounding noise can
 * excite a growing solution (at y = 0 the odd P_n must stay exactly 0).
 */
template <class Scalar>
class PStepper {
public:
    explicit PStepper(Scalar y) : y_(y), prev_(Scalar(1)), cur_(y), d_(y - Scalar(1)), plain_(std::abs(y) < 0.5) {}

    /// Advances from P_n to P_{n+1}, n >= 1; returns P_{n+1}.
    Scalar step(const Recurrence& rec, int n)
    {
        Scalar next;
        if (plain_) {
            next = (y_ * cur_ - rec.c(n) * prev_) / rec.a(n);
        } else {
            d_ = ((y_ - Scalar(1)) * cur_ + rec.c(n) * d_) / rec.a(n);
            next = cur_ + d_;
        }
        prev_ = cur_;
        cur_ = next;
        return next;
    }

private:
    Scalar y_;
    Scalar prev_;
    Scalar cur_;
    Scalar d_;
    bool plain_;
};

} // namespace detail

/// P_0..P_N at x; left half-plane points are evaluated at -x and mapped back by parity.
template <class Scalar>
VectorX<Scalar> eval_P(const Recurrence& rec, int N, Scalar x)
{
    if (N > rec.degree())
        throw DegreeOverflowError("eval_P: degree exceeds recurrence table");
    const bool flip = detail::left_half(x);
    const Scalar y = flip ? Scalar(-x) : x;
    VectorX<Scalar> p(N + 1);
    p(0) = Scalar(1);
    if (N == 0)
        return p;
    p(1) = y;
    detail::PStepper<Scalar> st(y);
    for (int n = 1; n < N; ++n)
        p(n + 1) = st.step(rec, n);
    if (flip)
        for (int n = 1; n <= N; n += 2)
            p(n) = -p(n);
    return p;
}

template <class Scalar>
VectorX<Scalar> eval_orthonormal(const Recurrence& rec, int N, Scalar x)
{
    if (N > rec.degree())
        throw DegreeOverflowError("eval_orthonormal: degree exceeds recurrence table");
    const Eigen::ArrayXd al = alpha_vector(rec);
    VectorX<Scalar> p(N + 1);
    p(0) = Scalar(1);
    if (N == 0)
        return p;
    p(1) = x / al(1);
    for (int n = 1; n < N; ++n)
        p(n + 1) = (x * p(n) - al(n) * p(n - 1)) / al(n + 1);
    return p;
}

template <class Scalar>
VectorX<Scalar> eval_monic(const Recurrence& rec, int N, Scalar x)
{
    if (N > rec.degree())
        throw DegreeOverflowError("eval_monic: degree exceeds recurrence table");
    const Eigen::ArrayXd al = alpha_vector(rec);
    VectorX<Scalar> s(N + 1);
    s(0) = Scalar(1);
    if (N == 0)
        return s;
    s(1) = x;
    for (int n = 1; n < N; ++n)
        s(n + 1) = x * s(n) - al(n) * al(n) * s(n - 1);
    return s;
}

template <class Scalar>
EvalRow<Scalar> eval_basis(const CoeffSequence& seq, int N, Scalar x, Normalization norm)
{
    if (N < 0)
        throw std::invalid_argument("eval_basis: N must be >= 0");
    const Recurrence rec = recurrence(seq, std::max(N, 1));
    switch (norm) {
    case Normalization::P:
        return {x, eval_P(rec, N, x), norm};
    case Normalization::orthonormal:
        return {x, eval_orthonormal(rec, N, x), norm};
    case Normalization::monic:
        return {x, eval_monic(rec, N, x), norm};
    }
    throw std::invalid_argument("eval_basis: unknown normalization");
}

/// Running supremum of |P_n(x)| for n <= N with early exit once the threshold is crossed.
struct SupTrace {
    double max_abs = 1.0;
    int onset = -1;      // first n with |P_n| > 1 + tol, -1 if none
    int last_degree = 0; // degree at which the scan stopped
    bool diverged = false;
};

template <class Scalar>
SupTrace sup_trace(const Recurrence& rec, Scalar x, int N, double tol, double threshold)
{
    if (N > rec.degree())
        throw DegreeOverflowError("sup_trace: degree exceeds recurrence table");
    const Scalar y = detail::left_half(x) ? Scalar(-x) : x;
    SupTrace t;
    detail::PStepper<Scalar> st(y);
    for (int n = 0; n < N; ++n) {
        const Scalar p = n == 0 ? y : st.step(rec, n);
        const double v = std::abs(p);
        t.last_degree = n + 1;
        if (!(v <= threshold)) {
            t.max_abs = std::isfinite(v) ? v : threshold;
            t.diverged = true;
            if (t.onset < 0)
                t.onset = n + 1;
            return t;
        }
        if (v > t.max_abs)
            t.max_abs = v;
        if (t.onset < 0 && v > 1.0 + tol)
            t.onset = n + 1;
    }
    return t;
}

/// Product form h(n) = prod_{k=1}^{n} a_{k-1}/c_k; throws HaarRangeError above 1e300.
double haar(const CoeffSequence& seq, int n);

/// Lazily extended, internally synchronized cache of h(0), h(1), ...
class HaarWeights {
public:
    explicit HaarWeights(CoeffSequence seq);

    double operator()(int n) const;
    Eigen::VectorXd head(int N) const;
    const CoeffSequence& owner() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

inline constexpr double haar_limit = 1e300;

/// Monomial coefficients of sigma_n from a callable n -> alpha_n^2 (any field Scalar).
template <class Scalar, class AlphaSq>
VectorX<Scalar> monic_from_alpha_sq(AlphaSq&& alpha_sq, int n)
{
    VectorX<Scalar> prev = VectorX<Scalar>::Zero(n + 1);
    VectorX<Scalar> cur = VectorX<Scalar>::Zero(n + 1);
    cur(0) = Scalar(1);
    for (int k = 0; k < n; ++k) {
        // sigma_{k+1} = x sigma_k - alpha_k^2 sigma_{k-1}
        VectorX<Scalar> next = VectorX<Scalar>::Zero(n + 1);
        next.segment(1, k + 1) = cur.head(k + 1);
        if (k > 0)
            next.head(k) -= Scalar(alpha_sq(k)) * prev.head(k);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Eigen::VectorXd monic_coeffs(const CoeffSequence& seq, int n);

} // namespace hyplab

#endif // HYPLAB_CORE_HPP
