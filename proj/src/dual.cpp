#include "hyplab/dual.hpp"

#include "hyplab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace hyplab {

bool DualEstimate::covers_full_interval() const
{
    return intervals.size() == 1 && intervals.front().lo <= -1.0 && intervals.front().hi >= 1.0;
}

Eigen::Index DualEstimate::index_of(double x) const
{
    const auto it = std::lower_bound(grid.data(), grid.data() + grid.size(), x);
    Eigen::Index j = it - grid.data();
    if (j == grid.size())
        return j - 1;
    if (j > 0 && x - grid(j - 1) < grid(j) - x)
        --j;
    return j;
}

bool DualEstimate::is_member(double x) const
{
    return member[index_of(x)];
}

std::vector<Interval> merge_runs(const Eigen::VectorXd& grid, const std::vector<bool>& member)
{
    std::vector<Interval> runs;
    const Eigen::Index n = grid.size();
    Eigen::Index j = 0;
    while (j < n) {
        if (!member[j]) {
            ++j;
            continue;
        }
        Eigen::Index end = j;
        while (end + 1 < n && (member[end + 1] || (end + 2 < n && member[end + 2])))
            end += member[end + 1] ? 1 : 2;
        runs.push_back({grid(j), grid(end)});
        j = end + 1;
    }
    return runs;
}

DualEstimate dual_estimate(const CoeffSequence& seq, const DualOptions& opt)
{
    if (opt.N < 1)
        throw std::invalid_argument("dual_estimate: N must be >= 1");
    if (!(opt.grid_step > 0.0 && opt.grid_step <= 1.0))
        throw std::invalid_argument("dual_estimate: grid_step must be in (0, 1]");
    const Recurrence rec = recurrence(seq, opt.N);

    // Positive half 0, step, ..., 1; the polynomials have parity, so the left half is a mirror.
    const int J = static_cast<int>(std::ceil(1.0 / opt.grid_step - 1e-9));
    std::vector<SupTrace> half(J + 1);
    parallel_for(0, J + 1, [&](int j) {
        const double x = j == J ? 1.0 : j * opt.grid_step;
        half[j] = sup_trace(rec, x, opt.N, opt.tol, opt.divergence_threshold);
    });

    DualEstimate est;
    est.options = opt;
    const Eigen::Index size = 2 * J + 1;
    est.grid.resize(size);
    est.max_abs.resize(size);
    est.member.resize(size);
    est.diverged.resize(size);
    est.onset.resize(size);
    for (int j = -J; j <= J; ++j) {
        const int a = std::abs(j);
        const Eigen::Index i = j + J;
        const double x = a == J ? 1.0 : a * opt.grid_step;
        est.grid(i) = j < 0 ? -x : x;
        est.max_abs(i) = half[a].max_abs;
        est.member[i] = !half[a].diverged && half[a].onset < 0;
        est.diverged[i] = half[a].diverged;
        est.onset[i] = half[a].onset;
    }
    est.intervals = merge_runs(est.grid, est.member);
    return est;
}

double prop31_cut(double eps)
{
    if (!(eps > 0.0 && eps < 1.0))
        throw ParameterDomainError("prop31_cut: eps must lie in (0, 1)");
    return std::sqrt((1.0 - eps) / (1.0 + eps));
}

std::array<Interval, 2> prop31_bound(double eps)
{
    const double cut = prop31_cut(eps);
    return {Interval{-1.0, -cut}, Interval{cut, 1.0}};
}

std::string_view membership_name(Membership m)
{
    switch (m) {
    case Membership::member_evidence: return "member";
    case Membership::nonmember_diverged: return "diverged";
    case Membership::undecided: return "undecided";
    }
    return "unknown";
}

Membership divergence_classify(const CoeffSequence& seq, double x, int N, double threshold, double tol)
{
    const SupTrace t = sup_trace(recurrence(seq, N), x, N, tol, threshold);
    if (t.diverged)
        return Membership::nonmember_diverged;
    return t.onset < 0 ? Membership::member_evidence : Membership::undecided;
}

double ComplexScan::max_survivor_imag() const
{
    double m = 0.0;
    for (const auto& z : survivors)
        m = std::max(m, std::abs(z.imag()));
    return m;
}

ComplexScan complex_scan(const CoeffSequence& seq, int N, double step, double tol, double extent)
{
    if (!(step > 0.0) || !(extent > 0.0))
        throw std::invalid_argument("complex_scan: step and extent must be positive");
    const Recurrence rec = recurrence(seq, N);
    const int K = static_cast<int>(std::floor(extent / step + 1e-9));
    const int side = 2 * K + 1;
    ComplexScan scan;
    scan.N = N;
    scan.step = step;
    scan.extent = extent;
    scan.tol = tol;
    scan.points.resize(static_cast<std::size_t>(side) * side);
    scan.max_abs.resize(scan.points.size());
    // Rows are independent; one row per task keeps the partition coarse.
    parallel_for(0, side, [&](int r) {
        const double im = (r - K) * step;
        for (int c = 0; c < side; ++c) {
            const std::complex<double> z((c - K) * step, im);
            const std::size_t idx = static_cast<std::size_t>(r) * side + c;
            scan.points[idx] = z;
            scan.max_abs[idx] = sup_trace(rec, z, N, tol, 1.0 + tol).max_abs;
        }
    });
    for (std::size_t i = 0; i < scan.points.size(); ++i)
        if (scan.max_abs[i] <= 1.0 + tol)
            scan.survivors.push_back(scan.points[i]);
    return scan;
}

void write_dual_csv(std::ostream& os, const DualEstimate& est)
{
    os << "x,max_abs_P,classification\n";
    os.precision(17);
    for (Eigen::Index i = 0; i < est.grid.size(); ++i) {
        const Membership m = est.diverged[i] ? Membership::nonmember_diverged
                             : est.member[i] ? Membership::member_evidence
                                             : Membership::undecided;
        os << est.grid(i) << ',' << est.max_abs(i) << ',' << membership_name(m) << '\n';
    }
}

void write_complex_csv(std::ostream& os, const ComplexScan& scan)
{
    os << "re,im,max_abs_P\n";
    os.precision(17);
    for (std::size_t i = 0; i < scan.points.size(); ++i)
        os << scan.points[i].real() << ',' << scan.points[i].imag() << ',' << scan.max_abs[i] << '\n';
}

std::vector<double> support_violations(const DualEstimate& est, const MeasureSpec& mu)
{
    std::vector<double> bad;
    for (Eigen::Index i = 0; i < est.grid.size(); ++i) {
        const double x = est.grid(i);
        bool inside = false;
        for (const auto& [a, b] : mu.support)
            inside = inside || (x >= a && x <= b);
        if (inside && !est.member[i])
            bad.push_back(x);
    }
    return bad;
}

bool SpectralMatch::pass() const
{
    return members_near_spectrum && gap_respected && probed > 0 && localized == probed &&
           truncation_drift <= 1e-10 && accumulates_at_one;
}

SpectralMatch match_discrete_dual(const CoeffSequence& seq, const DualEstimate& est, double cut, int N,
                                  int probe_count)
{
    SpectralMatch out;
    out.N = N;
    const double step = est.options.grid_step;
    const Eigen::VectorXd ev = jacobi_spectrum(seq, N).eigenvalues;
    const Eigen::VectorXd ev_half = jacobi_spectrum(seq, N / 2).eigenvalues;

    for (Eigen::Index i = 0; i < est.grid.size(); ++i) {
        if (!est.member[i])
            continue;
        const double x = std::abs(est.grid(i));
        double d = 1.0 - x;
        for (Eigen::Index k = 0; k < ev.size(); ++k)
            d = std::min(d, std::abs(x - std::abs(ev(k))));
        out.max_member_distance = std::max(out.max_member_distance, d);
    }
    // Half a cell of slack over one cell for rounding in the abscissas.
    out.members_near_spectrum = out.max_member_distance <= 1.5 * step;

    out.gap_respected = true;
    for (Eigen::Index i = 0; i < est.grid.size(); ++i)
        if (est.member[i] && std::abs(est.grid(i)) < cut)
            out.gap_respected = false;
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (std::abs(ev(k)) < cut - 1e-6)
            out.gap_respected = false;

    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (ev(k) > 0.0)
            out.positive_eigenvalues.push_back(ev(k));
    std::vector<double> half;
    for (Eigen::Index k = 0; k < ev_half.size(); ++k)
        if (ev_half(k) > 0.0)
            half.push_back(ev_half(k));
    const auto& pos = out.positive_eigenvalues;
    // Low enough that growth between eigenvalues stays below the double range.
    constexpr int probe_degree = 40;
    const Recurrence rec = recurrence(seq, probe_degree);

    const int probes = std::min<int>(probe_count, static_cast<int>(std::min(pos.size(), half.size())) - 1);
    for (int k = 0; k < probes; ++k) {
        ++out.probed;
        out.truncation_drift = std::max(out.truncation_drift, std::abs(pos[k] - half[k]));
        // Growth rates trend across a spectral cell, so look for a dip rather than a global minimum.
        const Eigen::Index target = est.index_of(pos[k]);
        if (target < 2 || target + 2 >= est.grid.size())
            continue;
        double v[5];
        for (int d = -2; d <= 2; ++d)
            v[d + 2] = sup_trace(rec, est.grid(target + d), probe_degree, 0.0, haar_limit).max_abs;
        for (int d = 1; d <= 3; ++d) {
            if (v[d] < v[d - 1] && v[d] < v[d + 1]) {
                ++out.localized;
                break;
            }
        }
    }

    out.accumulates_at_one = !pos.empty() && pos.back() >= 1.0 - 1e-6;
    for (int k = 1; k < probes + 6 && k < static_cast<int>(pos.size()); ++k)
        out.accumulates_at_one = out.accumulates_at_one && 1.0 - pos[k] < 1.0 - pos[k - 1];
    return out;
}

} // namespace hyplab
