#include "kmoment/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "kmoment/error.hpp"

namespace kmoment {

namespace {

void trim(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}

double max_abs(const std::vector<double>& c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

UnivariatePoly::UnivariatePoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  trim(coeffs_);
}

UnivariatePoly UnivariatePoly::monomial(int degree, double coef) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coef;
  return UnivariatePoly(std::move(c));
}

UnivariatePoly UnivariatePoly::from_roots(std::span<const double> roots) {
  UnivariatePoly p{1.0};
  for (double r : roots) p = p * UnivariatePoly{-r, 1.0};
  return p;
}

UnivariatePoly UnivariatePoly::from_recurrence(std::span<const double> a) {
  const std::size_t m = a.size();
  std::vector<double> c(m + 1, 0.0);
  c[m] = 1.0;
  for (std::size_t k = 1; k <= m; ++k) c[m - k] = 0.0 - a[k - 1];
  return UnivariatePoly(std::move(c));
}

UnivariatePoly UnivariatePoly::monic() const {
  if (is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot normalize the zero polynomial");
  std::vector<double> c = coeffs_;
  const double lead = c.back();
  for (double& v : c) v /= lead;
  c.back() = 1.0;
  return UnivariatePoly(std::move(c));
}

std::vector<double> UnivariatePoly::recurrence_coefficients() const {
  const UnivariatePoly p = monic();
  const std::size_t m = static_cast<std::size_t>(p.degree());
  std::vector<double> a(m);
  for (std::size_t k = 1; k <= m; ++k) a[k - 1] = -p.coeffs_[m - k];
  return a;
}

double UnivariatePoly::operator()(double x) const {
  double r = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

std::complex<double> UnivariatePoly::operator()(std::complex<double> x) const {
  std::complex<double> r = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
  return r;
}

UnivariatePoly operator+(const UnivariatePoly& p, const UnivariatePoly& q) {
  std::vector<double> c(std::max(p.coeffs_.size(), q.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < p.coeffs_.size(); ++k) c[k] += p.coeffs_[k];
  for (std::size_t k = 0; k < q.coeffs_.size(); ++k) c[k] += q.coeffs_[k];
  return UnivariatePoly(std::move(c));
}

UnivariatePoly operator-(const UnivariatePoly& p, const UnivariatePoly& q) {
  return p + (-1.0) * q;
}

UnivariatePoly operator*(const UnivariatePoly& p, const UnivariatePoly& q) {
  if (p.is_zero() || q.is_zero()) return UnivariatePoly{};
  std::vector<double> c(p.coeffs_.size() + q.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < q.coeffs_.size(); ++j) c[i + j] += p.coeffs_[i] * q.coeffs_[j];
  }
  return UnivariatePoly(std::move(c));
}

UnivariatePoly operator*(double s, const UnivariatePoly& p) {
  std::vector<double> c = p.coeffs_;
  for (double& v : c) v *= s;
  return UnivariatePoly(std::move(c));
}

DivisionResult divide(const UnivariatePoly& p, const UnivariatePoly& q, double rel_tol) {
  if (q.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
  std::vector<double> rem = p.coeffs();
  const int dq = q.degree();
  if (p.degree() < dq) return {UnivariatePoly{}, p};

  const double scale = max_abs(rem);
  std::vector<double> quot(static_cast<std::size_t>(p.degree() - dq) + 1, 0.0);
  const auto& qc = q.coeffs();
  for (int k = p.degree() - dq; k >= 0; --k) {
    const double f = rem[static_cast<std::size_t>(k + dq)] / qc.back();
    quot[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= dq; ++j) rem[static_cast<std::size_t>(k + j)] -= f * qc[static_cast<std::size_t>(j)];
    rem[static_cast<std::size_t>(k + dq)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(dq));
  for (double& v : rem) {
    if (std::abs(v) <= rel_tol * scale) v = 0.0;
  }
  return {UnivariatePoly(std::move(quot)), UnivariatePoly(std::move(rem))};
}

UnivariatePoly univariate_gcd(const UnivariatePoly& p, const UnivariatePoly& q, double rel_tol) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "gcd of a zero polynomial");
  UnivariatePoly a = p.monic();
  UnivariatePoly b = q.monic();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    UnivariatePoly r = divide(a, b, rel_tol).remainder;
    a = std::move(b);
    b = r.is_zero() ? UnivariatePoly{} : r.monic();
  }
  return a;
}

UnivariatePoly univariate_lcm(const UnivariatePoly& p, const UnivariatePoly& q, double rel_tol) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "lcm of a zero polynomial");
  const UnivariatePoly g = univariate_gcd(p, q, rel_tol);
  const UnivariatePoly cofactor = divide(p.monic(), g, rel_tol).quotient;
  return (cofactor * q.monic()).monic();
}

std::vector<Root> poly_roots(const UnivariatePoly& p, double cluster_tol) {
  if (p.degree() < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "root finding needs degree >= 1, got " + std::to_string(p.degree()));
  }
  const UnivariatePoly m = p.monic();
  const int n = m.degree();
  std::vector<std::complex<double>> raw;
  if (n == 1) {
    raw.emplace_back(-m.coeff(0), 0.0);
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    companion.diagonal(-1).setOnes();
    for (int k = 0; k < n; ++k) companion(k, n - 1) = -m.coeff(k);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorKind::InvalidArgument, "companion eigensolve did not converge");
    }
    for (int k = 0; k < n; ++k) raw.push_back(solver.eigenvalues()[k]);

    // Newton polishing against the original coefficients; a step is kept only
    // if it lowers |p|.
    const UnivariatePoly dm = [&] {
      std::vector<double> c(static_cast<std::size_t>(n));
      for (int k = 1; k <= n; ++k) c[static_cast<std::size_t>(k - 1)] = k * m.coeff(k);
      return UnivariatePoly(std::move(c));
    }();
    for (auto& z : raw) {
      for (int it = 0; it < 3; ++it) {
        const std::complex<double> fz = m(z);
        const std::complex<double> dz = dm(z);
        if (std::abs(dz) == 0.0) break;
        const std::complex<double> next = z - fz / dz;
        if (std::abs(m(next)) < std::abs(fz)) z = next; else break;
      }
      // Eigenvalues of a real matrix come in exact conjugate pairs; keep that.
      if (std::abs(z.imag()) <= 1e-14 * (1.0 + std::abs(z.real()))) z.imag(0.0);
    }
  }

  double max_mag = 0.0;
  for (const auto& z : raw) max_mag = std::max(max_mag, std::abs(z));
  const double tol = cluster_tol * (1.0 + max_mag);

  // Single-linkage clustering.
  std::vector<std::size_t> parent(raw.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < raw.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (std::abs(raw[i] - raw[j]) <= tol) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::pair<std::complex<double>, int>> groups;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto& g = groups[find(i)];
    g.first += raw[i];
    g.second += 1;
  }
  std::vector<Root> roots;
  roots.reserve(groups.size());
  for (const auto& [key, g] : groups) roots.push_back({g.first / static_cast<double>(g.second), g.second});
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return roots;
}

MultivariatePoly::MultivariatePoly(std::size_t dim,
                                   std::initializer_list<std::pair<MultiIndex, double>> terms)
    : dim_(dim) {
  for (const auto& [idx, c] : terms) add_term(idx, c);
}

MultivariatePoly MultivariatePoly::constant(std::size_t dim, double c) {
  MultivariatePoly p(dim);
  p.add_term(MultiIndex(dim), c);
  return p;
}

MultivariatePoly MultivariatePoly::variable(std::size_t dim, std::size_t var) {
  MultivariatePoly p(dim);
  p.add_term(MultiIndex::unit(dim, var), 1.0);
  return p;
}

MultivariatePoly MultivariatePoly::embed(const UnivariatePoly& u, std::size_t dim, std::size_t var) {
  MultivariatePoly p(dim);
  for (int k = 0; k <= u.degree(); ++k) p.add_term(MultiIndex::unit(dim, var, k), u.coeff(k));
  return p;
}

int MultivariatePoly::degree() const noexcept {
  int d = -1;
  for (const auto& [idx, c] : terms_) d = std::max(d, idx.degree());
  return d;
}

double MultivariatePoly::coeff(const MultiIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? 0.0 : it->second;
}

double MultivariatePoly::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& [idx, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void MultivariatePoly::check_dim(std::size_t other) const {
  if (other != dim_) {
    throw Error(ErrorKind::DimensionMismatch,
                "polynomial dimension " + std::to_string(dim_) + " vs " + std::to_string(other));
  }
}

void MultivariatePoly::add_term(const MultiIndex& idx, double c) {
  check_dim(idx.dim());
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double MultivariatePoly::evaluate(std::span<const double> point) const {
  check_dim(point.size());
  double sum = 0.0;
  for (const auto& [idx, c] : terms_) {
    double term = c;
    for (std::size_t k = 0; k < dim_; ++k) {
      for (int e = 0; e < idx[k]; ++e) term *= point[k];
    }
    sum += term;
  }
  return sum;
}

Eigen::VectorXd MultivariatePoly::coefficient_vector(int order) const {
  if (degree() > order) {
    throw Error(ErrorKind::InsufficientData,
                "polynomial of degree " + std::to_string(degree()) +
                    " does not fit in a basis of order " + std::to_string(order));
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_size(dim_, order)));
  for (const auto& [idx, c] : terms_) v(static_cast<Eigen::Index>(degree_lex_rank(idx, dim_))) = c;
  return v;
}

MultivariatePoly& MultivariatePoly::operator+=(const MultivariatePoly& other) {
  check_dim(other.dim_);
  for (const auto& [idx, c] : other.terms_) add_term(idx, c);
  return *this;
}

MultivariatePoly& MultivariatePoly::operator-=(const MultivariatePoly& other) {
  check_dim(other.dim_);
  for (const auto& [idx, c] : other.terms_) add_term(idx, -c);
  return *this;
}

MultivariatePoly operator*(const MultivariatePoly& a, const MultivariatePoly& b) {
  a.check_dim(b.dim_);
  MultivariatePoly out(a.dim_);
  for (const auto& [ia, ca] : a.terms_) {
    for (const auto& [ib, cb] : b.terms_) out.add_term(ia + ib, ca * cb);
  }
  return out;
}

MultivariatePoly operator*(double s, const MultivariatePoly& a) {
  MultivariatePoly out(a.dim_);
  for (const auto& [idx, c] : a.terms_) out.add_term(idx, s * c);
  return out;
}

double poly_eval(const MultivariatePoly& p, std::span<const double> point) {
  return p.evaluate(point);
}

}  // namespace kmoment
