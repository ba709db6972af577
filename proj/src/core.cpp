#include "hyplab/core.hpp"

#include <mutex>
#include <sstream>

namespace hyplab {

std::string_view family_tag(Family f)
{
    switch (f) {
    case Family::chebyshev1: return "cheb1";
    case Family::gencheb: return "gencheb";
    case Family::cosh: return "cosh";
    case Family::grinspun: return "grinspun";
    case Family::km: return "km";
    case Family::modkm: return "modkm";
    case Family::thm32: return "thm32";
    case Family::convex: return "convex";
    case Family::custom: return "custom";
    }
    return "unknown";
}

namespace {

std::string coefficient_message(int n, double value)
{
    std::ostringstream os;
    os.precision(17);
    os << "recurrence coefficient at n=" << n << " is " << value << ", outside (0,1)";
    return os.str();
}

} // namespace

CoefficientDomainError::CoefficientDomainError(int n, double value)
    : std::domain_error(coefficient_message(n, value)), index_(n)
{
}

CoeffSequence::CoeffSequence(Family tag, ParamList params, Fn c, std::string description, Fn a)
    : tag_(tag), params_(std::move(params)), c_(std::move(c)), a_(std::move(a)),
      description_(std::move(description))
{
    if (!c_)
        throw std::invalid_argument("CoeffSequence: empty coefficient function");
}

CoeffSequence CoeffSequence::custom(Fn c, std::string description)
{
    return CoeffSequence(Family::custom, {}, std::move(c), std::move(description));
}

double CoeffSequence::c(int n) const
{
    if (n < 1)
        throw std::out_of_range("CoeffSequence::c: index must be >= 1");
    const double v = c_(n);
    // With an explicit complement c may round to 1; a(n) > 0 is then the binding check.
    const bool ok = a_ ? (v > 0.0 && v <= 1.0) : (v > 0.0 && v < 1.0);
    if (!ok)
        throw CoefficientDomainError(n, v);
    return v;
}

double CoeffSequence::a(int n) const
{
    if (n < 0)
        throw std::out_of_range("CoeffSequence::a: index must be >= 0");
    if (n == 0)
        return 1.0;
    if (!a_)
        return 1.0 - c(n);
    c(n);
    const double v = a_(n);
    // Like c, an accurately supplied a may round to 1 when its partner is tiny.
    if (!(v > 0.0 && v <= 1.0))
        throw CoefficientDomainError(n, v);
    return v;
}

double CoeffSequence::param(std::string_view key) const
{
    for (const auto& [k, v] : params_)
        if (k == key)
            return v;
    throw std::out_of_range("CoeffSequence::param: no parameter '" + std::string(key) + "'");
}

Recurrence recurrence(const CoeffSequence& seq, int N)
{
    if (N < 0)
        throw std::invalid_argument("recurrence: N must be >= 0");
    Recurrence rec{Eigen::ArrayXd::Zero(N + 1), Eigen::ArrayXd::Ones(N + 1)};
    for (int n = 1; n <= N; ++n) {
        rec.c(n) = seq.c(n);
        rec.a(n) = seq.a(n);
    }
    return rec;
}

double alpha(const CoeffSequence& seq, int n)
{
    if (n < 1)
        throw std::out_of_range("alpha: index must be >= 1");
    return std::sqrt(seq.c(n) * seq.a(n - 1));
}

Eigen::ArrayXd alpha_vector(const Recurrence& rec)
{
    const int N = rec.degree();
    Eigen::ArrayXd al = Eigen::ArrayXd::Zero(N + 1);
    for (int n = 1; n <= N; ++n)
        al(n) = std::sqrt(rec.c(n) * rec.a(n - 1));
    return al;
}

double haar(const CoeffSequence& seq, int n)
{
    if (n < 0)
        throw std::out_of_range("haar: index must be >= 0");
    double h = 1.0;
    for (int k = 1; k <= n; ++k) {
        h *= seq.a(k - 1) / seq.c(k);
        if (!(h <= haar_limit))
            throw HaarRangeError("haar: h(" + std::to_string(k) + ") exceeds 1e300");
    }
    return h;
}

struct HaarWeights::State {
    explicit State(CoeffSequence s) : seq(std::move(s)) {}

    CoeffSequence seq;
    std::mutex mutex;
    std::vector<double> values{1.0};
};

HaarWeights::HaarWeights(CoeffSequence seq)
    : state_(std::make_shared<State>(std::move(seq)))
{
}

double HaarWeights::operator()(int n) const
{
    if (n < 0)
        throw std::out_of_range("HaarWeights: index must be >= 0");
    std::lock_guard lock(state_->mutex);
    auto& v = state_->values;
    while (static_cast<int>(v.size()) <= n) {
        const int k = static_cast<int>(v.size());
        const double next = v.back() * state_->seq.a(k - 1) / state_->seq.c(k);
        if (!(next <= haar_limit))
            throw HaarRangeError("HaarWeights: h(" + std::to_string(k) + ") exceeds 1e300");
        v.push_back(next);
    }
    return v[n];
}

Eigen::VectorXd HaarWeights::head(int N) const
{
    Eigen::VectorXd h(N + 1);
    for (int n = N; n >= 0; --n)
        h(n) = (*this)(n);
    return h;
}

const CoeffSequence& HaarWeights::owner() const
{
    return state_->seq;
}

Eigen::VectorXd monic_coeffs(const CoeffSequence& seq, int n)
{
    if (n < 0)
        throw std::invalid_argument("monic_coeffs: n must be >= 0");
    const Recurrence rec = recurrence(seq, std::max(n, 1));
    return monic_from_alpha_sq<double>([&](int k) { return rec.c(k) * rec.a(k - 1); }, n);
}

} // namespace hyplab
