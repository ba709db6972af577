#ifndef HYPLAB_LINEARIZATION_HPP
#define HYPLAB_LINEARIZATION_HPP

#include "hyplab/core.hpp"

#include <array>
#include <optional>

namespace hyplab {

/// g(m,n;k) for k = 0..m+n, i.e. P_m P_n = sum_k g(m,n;k) P_k.
Eigen::VectorXd linearize(const CoeffSequence& seq, int m, int n);

/**
 * @brief Dense table of g(m,n;k) for 0 <= m <= n <= N, |m-n| <= k <= m+n.
 *
 * Built once (rows for distinct n in parallel) and immutable afterwards.
 * Lookups symmetrize in (m,n) and return 0 outside |m-n| <= k <= m+n.
 */
class LinearizationTable {
public:
    static constexpr int default_degree = 64;

    explicit LinearizationTable(const CoeffSequence& seq, int N = default_degree);

    int degree() const noexcept { return N_; }
    const CoeffSequence& owner() const noexcept { return seq_; }

    double operator()(int m, int n, int k) const;
    /// Full row g(m,n;0..m+n).
    Eigen::VectorXd row(int m, int n) const;

    double min_coeff() const noexcept { return min_coeff_; }
    std::array<int, 3> min_witness() const noexcept { return min_witness_; }
    double row_sum_max_error() const noexcept { return row_sum_err_; }

private:
    std::size_t offset(int m, int n) const;

    CoeffSequence seq_;
    int N_;
    std::vector<std::size_t> row_start_; // index of (0,n) block
    std::vector<double> data_;           // (m,n) block holds k = n-m..n+m
    double min_coeff_ = 0.0;
    std::array<int, 3> min_witness_{0, 0, 0};
    double row_sum_err_ = 0.0;
};

struct NlpAudit {
    int N = 0;
    double tol = 0.0;
    bool is_nonnegative = false;
    double min_coeff = 0.0;
    std::array<int, 3> min_witness{0, 0, 0};
    double row_sum_max_error = 0.0;
    /// g(m,n;|m-n|) and g(m,n;m+n) strictly positive for every pair.
    bool extremes_nonzero = false;
    double min_extreme = 0.0;
    std::array<int, 3> extreme_witness{0, 0, 0};
};

/// Prefix audit over m,n <= N: nonnegative iff every g >= -tol.
NlpAudit check_nlp(const CoeffSequence& seq, int N, double tol = 1e-12);
NlpAudit check_nlp(const LinearizationTable& table, int N, double tol = 1e-12);

/// Finitely supported f on N_0, stored densely on 0..size()-1.
struct WeightedSeq {
    Eigen::VectorXcd values;

    static WeightedSeq delta(int k);
    int size() const { return static_cast<int>(values.size()); }
    std::complex<double> operator()(int k) const { return k < size() ? values(k) : 0.0; }
    /// sum_k |f(k)| h(k)
    double l1_norm(const HaarWeights& h) const;
    /// sum_k f(k) h(k)
    std::complex<double> haar_integral(const HaarWeights& h) const;
};

/// T_n f(m) = sum_k g(m,n;k) f(k).
WeightedSeq translate(const LinearizationTable& table, int n, const WeightedSeq& f);

/// (f * g)(n) = sum_k T_n f(k) g(k) h(k).
WeightedSeq convolve(const LinearizationTable& table, const HaarWeights& h, const WeightedSeq& f,
                     const WeightedSeq& g);

struct SzwarcResult {
    bool applies = false;
    std::optional<int> violated_at;
};

/// c_n <= 1/2 and both parity subsequences nondecreasing for n <= N (prefix evidence only).
SzwarcResult szwarc_criterion(const CoeffSequence& seq, int N);

} // namespace hyplab

#endif // HYPLAB_LINEARIZATION_HPP
