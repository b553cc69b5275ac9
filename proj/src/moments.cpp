#include "kmoment/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "kmoment/error.hpp"

namespace kmoment {

TruncatedSequence::TruncatedSequence(std::size_t dim, int max_degree, std::vector<double> values)
    : dim_(dim), max_degree_(max_degree), values_(std::move(values)) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "sequence dimension must be >= 1");
  if (max_degree < 0) throw Error(ErrorKind::InvalidArgument, "sequence degree must be >= 0");
  if (values_.size() != basis_size(dim, max_degree)) {
    throw Error(ErrorKind::InsufficientData,
                "sequence of degree " + std::to_string(max_degree) + " in " + std::to_string(dim) +
                    " variables needs " + std::to_string(basis_size(dim, max_degree)) +
                    " values, got " + std::to_string(values_.size()));
  }
}

TruncatedSequence TruncatedSequence::zeros(std::size_t dim, int max_degree) {
  return TruncatedSequence(dim, max_degree, std::vector<double>(basis_size(dim, max_degree), 0.0));
}

double TruncatedSequence::operator[](const MultiIndex& idx) const {
  if (!contains(idx)) {
    throw Error(ErrorKind::InsufficientData,
                "moment of degree " + std::to_string(idx.degree()) + " requested from a sequence of degree " +
                    std::to_string(max_degree_));
  }
  return values_[degree_lex_rank(idx, dim_)];
}

double& TruncatedSequence::operator[](const MultiIndex& idx) {
  if (!contains(idx)) {
    throw Error(ErrorKind::InsufficientData,
                "moment of degree " + std::to_string(idx.degree()) + " requested from a sequence of degree " +
                    std::to_string(max_degree_));
  }
  return values_[degree_lex_rank(idx, dim_)];
}

TruncatedSequence TruncatedSequence::truncated(int max_degree) const {
  if (max_degree > max_degree_) {
    throw Error(ErrorKind::InsufficientData, "cannot truncate to a higher degree");
  }
  std::vector<double> v(values_.begin(),
                        values_.begin() + static_cast<std::ptrdiff_t>(basis_size(dim_, max_degree)));
  return TruncatedSequence(dim_, max_degree, std::move(v));
}

MomentMatrix build_moment_matrix(const TruncatedSequence& beta, int order) {
  if (order < 0 || 2 * order > beta.max_degree()) {
    throw Error(ErrorKind::InsufficientData,
                "M(" + std::to_string(order) + ") needs moments up to degree " +
                    std::to_string(2 * order) + ", have " + std::to_string(beta.max_degree()));
  }
  MomentMatrix m;
  m.order = order;
  m.labels = enumerate_basis(beta.dim(), order);
  const auto n = static_cast<Eigen::Index>(m.labels.size());
  m.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = beta[m.labels[static_cast<std::size_t>(i)] + m.labels[static_cast<std::size_t>(j)]];
      m.entries(i, j) = v;
      m.entries(j, i) = v;
    }
  }
  return m;
}

TruncatedSequence shift_sequence(const MultivariatePoly& q, const TruncatedSequence& beta) {
  if (q.dim() != beta.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "polynomial dimension " + std::to_string(q.dim()) + " vs sequence dimension " +
                    std::to_string(beta.dim()));
  }
  const int dq = std::max(q.degree(), 0);
  if (dq > beta.max_degree()) {
    throw Error(ErrorKind::InsufficientData,
                "shift by a degree-" + std::to_string(dq) + " polynomial exceeds data of degree " +
                    std::to_string(beta.max_degree()));
  }
  const int out_degree = beta.max_degree() - dq;
  const auto basis = enumerate_basis(beta.dim(), out_degree);
  std::vector<double> values(basis.size(), 0.0);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    double s = 0.0;
    for (const auto& [gamma, c] : q.terms()) s += c * beta[gamma + basis[r]];
    values[r] = s;
  }
  return TruncatedSequence(beta.dim(), out_degree, std::move(values));
}

MomentMatrix build_localizing_matrix(const TruncatedSequence& beta, const MultivariatePoly& q,
                                     int order) {
  const int dq = std::max(q.degree(), 0);
  if (order < 0 || 2 * order + dq > beta.max_degree()) {
    throw Error(ErrorKind::InsufficientData,
                "localizing matrix of order " + std::to_string(order) + " for a degree-" +
                    std::to_string(dq) + " polynomial needs moments up to degree " +
                    std::to_string(2 * order + dq) + ", have " + std::to_string(beta.max_degree()));
  }
  MomentMatrix m = build_moment_matrix(shift_sequence(q, beta), order);
  m.kind = MatrixKind::Localizing;
  m.localizer = q;
  return m;
}

int max_localizing_order(int available_degree, int q_degree) {
  const int slack = available_degree - std::max(q_degree, 0);
  return slack < 0 ? -1 : slack / 2;
}

PsdResult psd_check(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return {true, 0.0};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const double lmin = solver.eigenvalues().minCoeff();
  const double slack = tol * (1.0 + std::abs(m.trace()));
  return {lmin >= -slack, lmin};
}

PsdResult psd_check(const MomentMatrix& m, double tol) { return psd_check(m.entries, tol); }

std::size_t numeric_rank(const Eigen::MatrixXd& m, double tol, double reference_scale) {
  if (m.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd sv = solver.eigenvalues().cwiseAbs();
  const double scale = std::max(sv.maxCoeff(), reference_scale);
  if (scale == 0.0) return 0;
  return static_cast<std::size_t>((sv.array() > tol * scale).count());
}

std::size_t numeric_rank(const MomentMatrix& m, double tol, double reference_scale) {
  return numeric_rank(m.entries, tol, reference_scale);
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double bilinear_form(const MultivariatePoly& f, const MomentMatrix& m, const MultivariatePoly& g) {
  if (f.dim() != m.dim() || g.dim() != m.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "bilinear form operands differ in dimension");
  }
  if (f.degree() > m.order || g.degree() > m.order) {
    throw Error(ErrorKind::InsufficientData,
                "bilinear form operand degree exceeds matrix order " + std::to_string(m.order));
  }
  return f.coefficient_vector(m.order).dot(m.entries * g.coefficient_vector(m.order));
}

}  // namespace kmoment
