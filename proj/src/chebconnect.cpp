#include "hyplab/chebconnect.hpp"

#include "hyplab/linearization.hpp"
#include "hyplab/measures.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hyplab {

namespace {

/// Coefficients of x * sum C(k) T_k, using x T_0 = T_1 and x T_k = (T_{k+1} + T_{k-1}) / 2.
Eigen::VectorXd times_x_cheb(const Eigen::VectorXd& C)
{
    const Eigen::Index L = C.size();
    Eigen::VectorXd R = Eigen::VectorXd::Zero(L + 1);
    R(1) += C(0);
    for (Eigen::Index k = 1; k < L; ++k) {
        R(k + 1) += 0.5 * C(k);
        R(k - 1) += 0.5 * C(k);
    }
    return R;
}

double horner(const Eigen::VectorXd& coeffs, double x)
{
    double v = 0.0;
    for (Eigen::Index i = coeffs.size() - 1; i >= 0; --i)
        v = v * x + coeffs(i);
    return v;
}

} // namespace

std::vector<ConnectionRow> connection_table(const CoeffSequence& seq, int N)
{
    if (N < 0)
        throw std::invalid_argument("connection_table: N must be >= 0");
    const Recurrence rec = recurrence(seq, std::max(N, 1));
    std::vector<ConnectionRow> rows;
    rows.reserve(N + 1);
    rows.push_back({0, Eigen::VectorXd::Ones(1)});
    if (N == 0)
        return rows;
    rows.push_back({1, Eigen::VectorXd::Unit(2, 1)});
    for (int n = 1; n < N; ++n) {
        Eigen::VectorXd next = times_x_cheb(rows[n].C);
        next.head(n) -= rec.c(n) * rows[n - 1].C;
        next /= rec.a(n);
        rows.push_back({n + 1, std::move(next)});
    }
    return rows;
}

ConnectionRow connection_coeffs(const CoeffSequence& seq, int n)
{
    return connection_table(seq, n).back();
}

Eigen::MatrixXd chebyshev_t_monomials(int n)
{
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n + 1, n + 1);
    T(0, 0) = 1.0;
    if (n >= 1)
        T(1, 1) = 1.0;
    for (int k = 1; k < n; ++k) {
        // T_{k+1} = 2x T_k - T_{k-1}
        T.col(k + 1).tail(n) = 2.0 * T.col(k).head(n);
        T.col(k + 1) -= T.col(k - 1);
    }
    return T;
}

double minimax_probe(const Eigen::VectorXd& coeffs, const MinimaxOptions& opt)
{
    if (coeffs.size() == 0)
        return 0.0;
    if (opt.grid_points < 2)
        throw std::invalid_argument("minimax_probe: need at least two grid points");
    const int G = opt.grid_points;
    auto at = [&](int i) { return i == G - 1 ? 1.0 : -1.0 + 2.0 * i / (G - 1); };
    std::vector<double> v(G);
    for (int i = 0; i < G; ++i)
        v[i] = std::abs(horner(coeffs, at(i)));

    std::vector<int> peaks;
    for (int i = 0; i < G; ++i) {
        const bool left = i == 0 || v[i] >= v[i - 1];
        const bool right = i == G - 1 || v[i] >= v[i + 1];
        if (left && right)
            peaks.push_back(i);
    }
    const int top = std::min<int>(opt.refine_top, static_cast<int>(peaks.size()));
    std::partial_sort(peaks.begin(), peaks.begin() + top, peaks.end(), [&](int a, int b) { return v[a] > v[b]; });

    double best = *std::max_element(v.begin(), v.end());
    for (int t = 0; t < top; ++t) {
        const int i = peaks[t];
        const double lo = at(std::max(i - 1, 0));
        const double hi = at(std::min(i + 1, G - 1));
        const auto r = boost::math::tools::brent_find_minima(
            [&](double x) { return -std::abs(horner(coeffs, x)); }, lo, hi, std::numeric_limits<double>::digits / 2);
        best = std::max(best, -r.second);
    }
    return best;
}

std::optional<double> tail_limit(const std::function<double(int)>& f, int N, double tol)
{
    const double last = f(2 * N);
    for (int n = N; n < 2 * N; ++n)
        if (!(std::abs(f(n) - last) <= tol))
            return std::nullopt;
    return last;
}

CriterionReport criterion_report(const CoeffSequence& seq, const CriterionOptions& opt)
{
    if (opt.connection_depth < 2)
        throw std::invalid_argument("criterion_report: connection depth must be >= 2");
    CriterionReport rep;
    rep.N = opt.connection_depth;
    rep.nlp_prefix = check_nlp(seq, opt.nlp_depth).is_nonnegative;

    const DualEstimate est = dual_estimate(seq, opt.dual);
    rep.dual_full = est.covers_full_interval();
    rep.uniform_bound = std::none_of(est.diverged.begin(), est.diverged.end(), [](bool d) { return d; });

    rep.min_connection = std::numeric_limits<double>::infinity();
    for (const auto& row : connection_table(seq, opt.connection_depth))
        rep.min_connection = std::min(rep.min_connection, row.C.minCoeff());
    rep.connection_nonneg = rep.min_connection >= -opt.connection_tol;

    const Eigen::VectorXd ev = jacobi_spectrum(seq, opt.spectrum_N).eigenvalues;
    for (Eigen::Index k = 1; k < ev.size(); ++k)
        rep.largest_spectral_gap = std::max(rep.largest_spectral_gap, ev(k) - ev(k - 1));
    rep.support_symmetric_interval = rep.largest_spectral_gap <= opt.spectral_gap_tol;

    rep.c_limit = tail_limit([&](int n) { return seq.c(n); }, opt.tail_N, opt.tail_tol);
    rep.c_convergent = rep.c_limit.has_value();
    const auto alpha_lim = tail_limit([&](int n) { return alpha(seq, n); }, opt.tail_N, opt.tail_tol);
    if (alpha_lim && *alpha_lim > 0.0 && 2.0 * *alpha_lim <= 1.0 + opt.tail_tol) {
        rep.nevai = true;
        rep.nevai_b = 2.0 * *alpha_lim;
    }

    rep.haar_ge_2_prediction =
        rep.dual_full || rep.connection_nonneg ||
        (rep.nlp_prefix && (rep.uniform_bound || rep.support_symmetric_interval || rep.c_convergent || rep.nevai));
    return rep;
}

} // namespace hyplab
