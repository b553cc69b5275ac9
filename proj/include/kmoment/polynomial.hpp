#ifndef KMOMENT_POLYNOMIAL_HPP
#define KMOMENT_POLYNOMIAL_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "kmoment/multi_index.hpp"

namespace kmoment {

/// Real univariate polynomial, coefficients lowest degree first.
///
/// Recurrence convention: a monic p of degree m is written
///   p(x) = x^m - a_1 x^(m-1) - ... - a_m,
/// so that p annihilates s exactly when s_(k+m) = a_1 s_(k+m-1) + ... + a_m s_k.
/// recurrence_coefficients() and from_recurrence() convert between the two
/// views.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<double> coeffs);
  UnivariatePoly(std::initializer_list<double> coeffs)
      : UnivariatePoly(std::vector<double>(coeffs)) {}

  static UnivariatePoly monomial(int degree, double coef = 1.0);
  /// prod (x - r) over the given real roots.
  static UnivariatePoly from_roots(std::span<const double> roots);
  /// x^m - a_1 x^(m-1) - ... - a_m.
  static UnivariatePoly from_recurrence(std::span<const double> a);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1.0; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double coeff(int k) const {
    return k >= 0 && k <= degree() ? coeffs_[static_cast<std::size_t>(k)] : 0.0;
  }
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

  UnivariatePoly monic() const;
  /// (a_1, ..., a_m) of the monic normalization.
  std::vector<double> recurrence_coefficients() const;

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> x) const;

  friend UnivariatePoly operator+(const UnivariatePoly& p, const UnivariatePoly& q);
  friend UnivariatePoly operator-(const UnivariatePoly& p, const UnivariatePoly& q);
  friend UnivariatePoly operator*(const UnivariatePoly& p, const UnivariatePoly& q);
  friend UnivariatePoly operator*(double s, const UnivariatePoly& p);

 private:
  std::vector<double> coeffs_;
};

struct DivisionResult {
  UnivariatePoly quotient;
  UnivariatePoly remainder;
};

/// Long division p = q * quotient + remainder. Remainder coefficients below
/// rel_tol * max|p_k| are dropped.
DivisionResult divide(const UnivariatePoly& p, const UnivariatePoly& q,
                      double rel_tol = 1e-9);

/// Monic gcd by the Euclidean remainder sequence.
UnivariatePoly univariate_gcd(const UnivariatePoly& p, const UnivariatePoly& q,
                              double rel_tol = 1e-9);

/// Monic least common multiple p*q / gcd(p, q).
UnivariatePoly univariate_lcm(const UnivariatePoly& p, const UnivariatePoly& q,
                              double rel_tol = 1e-9);

struct Root {
  std::complex<double> value;
  int multiplicity = 1;
};

/// All complex roots from the eigenvalues of the companion matrix, sorted by
/// (real, imaginary) part. Eigenvalues closer than
/// cluster_tol * (1 + max|root|) are merged into one root with multiplicity.
std::vector<Root> poly_roots(const UnivariatePoly& p, double cluster_tol = 1e-7);

/// Sparse real polynomial in `dim` variables. Terms are kept in degree-lex
/// order and zero coefficients are never stored.
class MultivariatePoly {
 public:
  using TermMap = std::map<MultiIndex, double, DegreeLexLess>;

  MultivariatePoly() = default;
  explicit MultivariatePoly(std::size_t dim) : dim_(dim) {}
  MultivariatePoly(std::size_t dim, std::initializer_list<std::pair<MultiIndex, double>> terms);

  static MultivariatePoly constant(std::size_t dim, double c);
  static MultivariatePoly variable(std::size_t dim, std::size_t var);
  /// p(x_var) viewed as a polynomial in dim variables.
  static MultivariatePoly embed(const UnivariatePoly& p, std::size_t dim, std::size_t var);

  std::size_t dim() const noexcept { return dim_; }
  /// Max total degree over the stored terms; -1 for the zero polynomial.
  int degree() const noexcept;
  bool is_zero() const noexcept { return terms_.empty(); }
  const TermMap& terms() const noexcept { return terms_; }
  double coeff(const MultiIndex& idx) const;
  double max_abs_coeff() const noexcept;

  /// Adds c to the coefficient of x^idx, erasing the term if it cancels.
  void add_term(const MultiIndex& idx, double c);

  double evaluate(std::span<const double> point) const;

  /// Coefficients laid out along enumerate_basis(dim, order).
  Eigen::VectorXd coefficient_vector(int order) const;

  MultivariatePoly& operator+=(const MultivariatePoly& other);
  MultivariatePoly& operator-=(const MultivariatePoly& other);
  friend MultivariatePoly operator+(MultivariatePoly a, const MultivariatePoly& b) {
    a += b;
    return a;
  }
  friend MultivariatePoly operator-(MultivariatePoly a, const MultivariatePoly& b) {
    a -= b;
    return a;
  }
  friend MultivariatePoly operator*(const MultivariatePoly& a, const MultivariatePoly& b);
  friend MultivariatePoly operator*(double s, const MultivariatePoly& a);

  friend bool operator==(const MultivariatePoly&, const MultivariatePoly&) = default;

 private:
  void check_dim(std::size_t other) const;

  std::size_t dim_ = 0;
  TermMap terms_;
};

/// Sum of coefficient * point^idx.
double poly_eval(const MultivariatePoly& p, std::span<const double> point);

}  // namespace kmoment

#endif  // KMOMENT_POLYNOMIAL_HPP
