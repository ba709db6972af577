#include "hyplab/linearization.hpp"

#include "hyplab/parallel.hpp"

#include <cmath>
#include <limits>

namespace hyplab {

namespace {

/// Coefficients of x * E in the P-basis, using x P_k = a_k P_{k+1} + c_k P_{k-1}.
Eigen::VectorXd times_x(const Recurrence& rec, const Eigen::VectorXd& E)
{
    const Eigen::Index L = E.size();
    Eigen::VectorXd R = Eigen::VectorXd::Zero(L);
    // a_0 = 1 and c_0 = 0 give x P_0 = P_1 without a special case.
    R.tail(L - 1).array() += rec.a.head(L - 1) * E.head(L - 1).array();
    R.head(L - 1).array() += rec.c.segment(1, L - 1) * E.tail(L - 1).array();
    return R;
}

/**
 * Expansions of P_m P_n for m = 0..mmax, each of length n + mmax + 2:
 * E_{m+1} = (x E_m - c_m E_{m-1}) / a_m, E_0 = e_n.
 * The top entry stays zero; it only absorbs x * P_{n+mmax}.
 */
std::vector<Eigen::VectorXd> product_rows(const Recurrence& rec, int n, int mmax)
{
    const int L = n + mmax + 2;
    if (rec.degree() < L - 1)
        throw DegreeOverflowError("linearize: recurrence table too short");
    std::vector<Eigen::VectorXd> E;
    E.reserve(mmax + 1);
    E.push_back(Eigen::VectorXd::Unit(L, n));
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(L);
    for (int m = 0; m < mmax; ++m) {
        Eigen::VectorXd next = (times_x(rec, E[m]) - rec.c(m) * prev) / rec.a(m);
        prev = E[m];
        E.push_back(std::move(next));
    }
    return E;
}

} // namespace

Eigen::VectorXd linearize(const CoeffSequence& seq, int m, int n)
{
    if (m < 0 || n < 0)
        throw std::invalid_argument("linearize: degrees must be >= 0");
    if (m > n)
        std::swap(m, n);
    const Recurrence rec = recurrence(seq, m + n + 1);
    return product_rows(rec, n, m).back().head(m + n + 1);
}

LinearizationTable::LinearizationTable(const CoeffSequence& seq, int N) : seq_(seq), N_(N)
{
    if (N < 0)
        throw std::invalid_argument("LinearizationTable: N must be >= 0");
    row_start_.resize(N + 2);
    row_start_[0] = 0;
    for (int n = 0; n <= N; ++n)
        row_start_[n + 1] = row_start_[n] + static_cast<std::size_t>(n + 1) * (n + 1);
    data_.resize(row_start_[N + 1]);

    const Recurrence rec = recurrence(seq, 2 * N + 1);
    std::vector<double> row_min(N + 1), row_err(N + 1);
    std::vector<std::array<int, 3>> row_wit(N + 1);
    parallel_for(0, N + 1, [&](int n) {
        const auto E = product_rows(rec, n, n);
        double mn = std::numeric_limits<double>::infinity(), err = 0.0;
        std::array<int, 3> wit{0, n, n};
        for (int m = 0; m <= n; ++m) {
            double* dst = data_.data() + offset(m, n);
            for (int k = n - m; k <= n + m; ++k) {
                const double g = E[m](k);
                dst[k - (n - m)] = g;
                if (g < mn) {
                    mn = g;
                    wit = {m, n, k};
                }
            }
            err = std::max(err, std::abs(E[m].sum() - 1.0));
        }
        row_min[n] = mn;
        row_err[n] = err;
        row_wit[n] = wit;
    });
    min_coeff_ = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= N; ++n) {
        if (row_min[n] < min_coeff_) {
            min_coeff_ = row_min[n];
            min_witness_ = row_wit[n];
        }
        row_sum_err_ = std::max(row_sum_err_, row_err[n]);
    }
}

std::size_t LinearizationTable::offset(int m, int n) const
{
    return row_start_[n] + static_cast<std::size_t>(m) * m;
}

double LinearizationTable::operator()(int m, int n, int k) const
{
    if (m > n)
        std::swap(m, n);
    if (m < 0 || n > N_)
        throw DegreeOverflowError("LinearizationTable: degree " + std::to_string(n) + " exceeds table bound " +
                                  std::to_string(N_));
    if (k < n - m || k > n + m)
        return 0.0;
    return data_[offset(m, n) + (k - (n - m))];
}

Eigen::VectorXd LinearizationTable::row(int m, int n) const
{
    Eigen::VectorXd r = Eigen::VectorXd::Zero(m + n + 1);
    for (int k = std::abs(m - n); k <= m + n; ++k)
        r(k) = (*this)(m, n, k);
    return r;
}

NlpAudit check_nlp(const LinearizationTable& table, int N, double tol)
{
    if (N < 1 || N > table.degree())
        throw DegreeOverflowError("check_nlp: N outside table range");
    NlpAudit audit;
    audit.N = N;
    audit.tol = tol;
    audit.min_coeff = std::numeric_limits<double>::infinity();
    audit.min_extreme = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= N; ++n) {
        for (int m = 0; m <= n; ++m) {
            double sum = 0.0;
            for (int k = n - m; k <= n + m; ++k) {
                const double g = table(m, n, k);
                sum += g;
                if (g < audit.min_coeff) {
                    audit.min_coeff = g;
                    audit.min_witness = {m, n, k};
                }
            }
            audit.row_sum_max_error = std::max(audit.row_sum_max_error, std::abs(sum - 1.0));
            for (int k : {n - m, n + m}) {
                const double g = table(m, n, k);
                if (g < audit.min_extreme) {
                    audit.min_extreme = g;
                    audit.extreme_witness = {m, n, k};
                }
            }
        }
    }
    audit.is_nonnegative = audit.min_coeff >= -tol;
    audit.extremes_nonzero = audit.min_extreme > 0.0;
    return audit;
}

NlpAudit check_nlp(const CoeffSequence& seq, int N, double tol)
{
    return check_nlp(LinearizationTable(seq, N), N, tol);
}

WeightedSeq WeightedSeq::delta(int k)
{
    WeightedSeq f{Eigen::VectorXcd::Zero(k + 1)};
    f.values(k) = 1.0;
    return f;
}

double WeightedSeq::l1_norm(const HaarWeights& h) const
{
    double s = 0.0;
    for (int k = 0; k < size(); ++k)
        s += std::abs(values(k)) * h(k);
    return s;
}

std::complex<double> WeightedSeq::haar_integral(const HaarWeights& h) const
{
    std::complex<double> s = 0.0;
    for (int k = 0; k < size(); ++k)
        s += values(k) * h(k);
    return s;
}

WeightedSeq translate(const LinearizationTable& table, int n, const WeightedSeq& f)
{
    const int K = f.size();
    if (K == 0)
        return f;
    const int M = K - 1 + n;
    if (M > table.degree())
        throw DegreeOverflowError("translate: needs table degree " + std::to_string(M));
    WeightedSeq out{Eigen::VectorXcd::Zero(M + 1)};
    for (int m = 0; m <= M; ++m) {
        const int hi = std::min(m + n, K - 1);
        for (int k = std::abs(m - n); k <= hi; ++k)
            out.values(m) += table(m, n, k) * f.values(k);
    }
    return out;
}

WeightedSeq convolve(const LinearizationTable& table, const HaarWeights& h, const WeightedSeq& f,
                     const WeightedSeq& g)
{
    const int Kf = f.size(), Kg = g.size();
    if (Kf == 0 || Kg == 0)
        return WeightedSeq{Eigen::VectorXcd::Zero(0)};
    const int J = Kf + Kg - 2;
    if (J > table.degree())
        throw DegreeOverflowError("convolve: needs table degree " + std::to_string(J));
    WeightedSeq out{Eigen::VectorXcd::Zero(J + 1)};
    for (int j = 0; j <= J; ++j) {
        for (int k = 0; k < Kg; ++k) {
            std::complex<double> Tf = 0.0; // T_j f(k)
            for (int i = std::abs(k - j); i <= std::min(k + j, Kf - 1); ++i)
                Tf += table(k, j, i) * f.values(i);
            out.values(j) += Tf * g.values(k) * h(k);
        }
    }
    return out;
}

SzwarcResult szwarc_criterion(const CoeffSequence& seq, int N)
{
    if (N < 2)
        throw std::invalid_argument("szwarc_criterion: N must be >= 2");
    // Slack absorbs rounding in formula-defined coefficients that sit exactly on 1/2.
    constexpr double slack = 1e-14;
    for (int n = 1; n <= N; ++n) {
        const double c = seq.c(n);
        if (c > 0.5 + slack)
            return {false, n};
        if (n > 2 && c < seq.c(n - 2) - slack)
            return {false, n};
    }
    return {true, std::nullopt};
}

} // namespace hyplab
