#ifndef KMOMENT_MOMENTS_HPP
#define KMOMENT_MOMENTS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "kmoment/multi_index.hpp"
#include "kmoment/polynomial.hpp"

namespace kmoment {

/// Dense moment data beta_i for every |i| <= max_degree, stored along the
/// degree-lex basis.
class TruncatedSequence {
 public:
  TruncatedSequence() = default;
  /// `values` must hold basis_size(dim, max_degree) entries in degree-lex order.
  TruncatedSequence(std::size_t dim, int max_degree, std::vector<double> values);

  static TruncatedSequence zeros(std::size_t dim, int max_degree);

  std::size_t dim() const noexcept { return dim_; }
  int max_degree() const noexcept { return max_degree_; }
  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }

  bool contains(const MultiIndex& idx) const noexcept {
    return idx.dim() == dim_ && idx.degree() <= max_degree_;
  }
  double operator[](const MultiIndex& idx) const;
  double& operator[](const MultiIndex& idx);
  double at_rank(std::size_t rank) const { return values_.at(rank); }

  /// The sub-sequence up to a smaller total degree.
  TruncatedSequence truncated(int max_degree) const;

  friend bool operator==(const TruncatedSequence&, const TruncatedSequence&) = default;

 private:
  std::size_t dim_ = 0;
  int max_degree_ = -1;
  std::vector<double> values_;
};

enum class MatrixKind { Plain, Localizing };

/// M(n) or a localizing matrix M_q, rows and columns labelled by the
/// degree-lex basis of order n.
struct MomentMatrix {
  int order = 0;
  std::vector<MultiIndex> labels;
  Eigen::MatrixXd entries;
  MatrixKind kind = MatrixKind::Plain;
  std::optional<MultivariatePoly> localizer;

  std::size_t dim() const { return labels.empty() ? 0 : labels.front().dim(); }
};

/// Entry (i, j) = beta_(i+j). Requires 2*order <= beta.max_degree().
MomentMatrix build_moment_matrix(const TruncatedSequence& beta, int order);

/// (q * beta)_a = sum_g q_g beta_(g+a), defined up to max_degree - deg q.
TruncatedSequence shift_sequence(const MultivariatePoly& q, const TruncatedSequence& beta);

/// Moment matrix of q * beta at the given order.
MomentMatrix build_localizing_matrix(const TruncatedSequence& beta, const MultivariatePoly& q,
                                     int order);

/// Largest order m with 2m + deg q <= available_degree, or -1 if none.
int max_localizing_order(int available_degree, int q_degree);

struct PsdResult {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
};

/// PSD if lambda_min >= -tol * (1 + |trace|).
PsdResult psd_check(const MomentMatrix& m, double tol = 1e-8);
PsdResult psd_check(const Eigen::MatrixXd& m, double tol = 1e-8);

/// Number of singular values above tol * max(sigma_max, reference_scale)
/// (0 for the zero matrix). The matrices here are symmetric, so singular values
/// are |eigenvalues|. A reference scale keeps rounding noise in a numerically
/// zero matrix, such as a localizing matrix whose q vanishes on every atom,
/// from counting as rank.
std::size_t numeric_rank(const MomentMatrix& m, double tol = 1e-8, double reference_scale = 0.0);
std::size_t numeric_rank(const Eigen::MatrixXd& m, double tol = 1e-8, double reference_scale = 0.0);

/// Largest |eigenvalue| of a symmetric matrix.
double spectral_norm(const Eigen::MatrixXd& m);

/// f^T M g with f and g laid out on the matrix labels.
double bilinear_form(const MultivariatePoly& f, const MomentMatrix& m, const MultivariatePoly& g);

}  // namespace kmoment

#endif  // KMOMENT_MOMENTS_HPP
