#include "kmoment/binet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/LU>

#include "kmoment/error.hpp"

namespace kmoment {

namespace {

using Eigen::MatrixXcd;

MatrixXcd vandermonde(const std::vector<Complex>& roots) {
  const auto n = static_cast<Eigen::Index>(roots.size());
  MatrixXcd v(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Complex p = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      v(k, j) = p;
      p *= roots[static_cast<std::size_t>(j)];
    }
  }
  return v;
}

std::vector<Complex> simple_roots(const UnivariatePoly& p, std::size_t var) {
  std::vector<Complex> out;
  for (const Root& r : poly_roots(p)) {
    if (r.multiplicity > 1) {
      throw Error(ErrorKind::RepeatedRoots,
                  "characteristic polynomial of variable " + std::to_string(var + 1) +
                      " has a root of multiplicity " + std::to_string(r.multiplicity) +
                      " near " + std::to_string(r.value.real()) +
                      "; a positive semidefinite moment matrix forces distinct roots")
          .with_variable(var);
    }
    out.push_back(r.value);
  }
  return out;
}

std::string grid_string(const std::vector<std::size_t>& g) {
  std::string s = "(";
  for (std::size_t k = 0; k < g.size(); ++k) s += (k ? "," : "") + std::to_string(g[k]);
  return s + ")";
}

// Powers x^0 .. x^n.
template <class T>
std::vector<T> powers(T x, int n) {
  std::vector<T> p(static_cast<std::size_t>(n) + 1);
  p[0] = T(1);
  for (int k = 1; k <= n; ++k) p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * x;
  return p;
}

}  // namespace

std::vector<std::size_t> BinetExpansion::shape() const {
  std::vector<std::size_t> s;
  for (const auto& r : roots) s.push_back(r.size());
  return s;
}

std::size_t BinetExpansion::flat_index(std::span<const std::size_t> grid) const {
  if (grid.size() != roots.size()) {
    throw Error(ErrorKind::GridIndexOutOfRange, "grid index has the wrong dimension");
  }
  std::size_t flat = 0;
  for (std::size_t l = 0; l < roots.size(); ++l) {
    if (grid[l] >= roots[l].size()) {
      throw Error(ErrorKind::GridIndexOutOfRange,
                  "grid coordinate " + std::to_string(grid[l]) + " outside the " +
                      std::to_string(roots[l].size()) + " roots of variable " + std::to_string(l + 1));
    }
    flat = flat * roots[l].size() + grid[l];
  }
  return flat;
}

std::vector<std::size_t> BinetExpansion::grid_index(std::size_t flat) const {
  std::vector<std::size_t> g(roots.size());
  for (std::size_t l = roots.size(); l-- > 0;) {
    g[l] = flat % roots[l].size();
    flat /= roots[l].size();
  }
  return g;
}

std::vector<BinetTerm> univariate_binet(const UnivariatePoly& p, std::span<const double> initial) {
  if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "Binet expansion needs degree >= 1");
  if (initial.size() != static_cast<std::size_t>(p.degree())) {
    throw Error(ErrorKind::InvalidArgument,
                "degree-" + std::to_string(p.degree()) + " recurrence needs " + std::to_string(p.degree()) +
                    " initial terms, got " + std::to_string(initial.size()));
  }
  const std::vector<Complex> roots = simple_roots(p, 0);
  Eigen::VectorXcd rhs(static_cast<Eigen::Index>(initial.size()));
  for (std::size_t k = 0; k < initial.size(); ++k) rhs(static_cast<Eigen::Index>(k)) = initial[k];
  const Eigen::VectorXcd c = vandermonde(roots).partialPivLu().solve(rhs);
  std::vector<BinetTerm> out;
  for (std::size_t i = 0; i < roots.size(); ++i) out.push_back({roots[i], c(static_cast<Eigen::Index>(i))});
  return out;
}

BinetExpansion multivariate_binet(const CharacteristicSystem& sys, const TruncatedSequence& beta,
                                  std::span<const std::size_t> mode_order) {
  const std::size_t d = beta.dim();
  if (sys.dim() != d) {
    throw Error(ErrorKind::DimensionMismatch, "system and sequence dimensions differ");
  }
  BinetExpansion e;
  for (std::size_t l = 0; l < d; ++l) e.roots.push_back(simple_roots(sys.polys[l], l));
  if (sys.tau() > beta.max_degree()) {
    throw Error(ErrorKind::InsufficientData,
                "the initial block reaches degree " + std::to_string(sys.tau()) +
                    " but moments stop at degree " + std::to_string(beta.max_degree()));
  }

  const std::vector<std::size_t> shape = e.shape();
  const std::size_t total =
      std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
  std::vector<Complex> tensor(total);
  for (std::size_t f = 0; f < total; ++f) {
    const auto g = e.grid_index(f);
    tensor[f] = beta[MultiIndex(std::vector<int>(g.begin(), g.end()))];
  }

  std::vector<std::size_t> order(mode_order.begin(), mode_order.end());
  if (order.empty()) {
    order.resize(d);
    std::iota(order.begin(), order.end(), 0);
  }
  for (std::size_t l : order) {
    const std::size_t m = shape[l];
    std::size_t stride = 1;
    for (std::size_t k = l + 1; k < d; ++k) stride *= shape[k];
    const std::size_t fibers = total / m;
    // Gather every fiber along mode l as a column, solve all at once.
    MatrixXcd rhs(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(fibers));
    std::vector<std::size_t> base(fibers);
    std::size_t col = 0;
    for (std::size_t f = 0; f < total; ++f) {
      if ((f / stride) % m != 0) continue;
      base[col] = f;
      for (std::size_t k = 0; k < m; ++k) rhs(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(col)) = tensor[f + k * stride];
      ++col;
    }
    const MatrixXcd sol = vandermonde(e.roots[l]).partialPivLu().solve(rhs);
    for (std::size_t c = 0; c < fibers; ++c) {
      for (std::size_t k = 0; k < m; ++k) tensor[base[c] + k * stride] = sol(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(c));
    }
  }
  e.coefficients = std::move(tensor);

  // Reconstruction error over every available moment.
  const int deg = beta.max_degree();
  std::vector<std::vector<std::vector<Complex>>> pw(d);
  for (std::size_t l = 0; l < d; ++l) {
    for (const Complex& r : e.roots[l]) pw[l].push_back(powers(r, deg));
  }
  const auto basis = enumerate_basis(d, deg);
  double worst = 0.0;
  for (std::size_t r = 0; r < basis.size(); ++r) {
    Complex sum = 0.0;
    for (std::size_t f = 0; f < total; ++f) {
      if (e.coefficients[f] == 0.0) continue;
      const auto g = e.grid_index(f);
      Complex term = e.coefficients[f];
      for (std::size_t l = 0; l < d; ++l) term *= pw[l][g[l]][static_cast<std::size_t>(basis[r][l])];
      sum += term;
    }
    const double b = beta.at_rank(r);
    worst = std::max(worst, std::abs(b - sum) / (1.0 + std::abs(b)));
  }
  e.source_residual = worst;
  return e;
}

AtomicMeasure expansion_to_measure(const BinetExpansion& e, MeasureTolerances tol) {
  AtomicMeasure mu;
  mu.dim = e.dim();
  double cmax = 0.0;
  for (const Complex& c : e.coefficients) cmax = std::max(cmax, std::abs(c));
  if (cmax == 0.0) return mu;

  double root_re = 0.0;
  for (const auto& rs : e.roots) {
    for (const Complex& r : rs) root_re = std::max(root_re, std::abs(r.real()));
  }
  std::vector<std::size_t> survivors;
  double coef_re = 0.0;
  for (std::size_t f = 0; f < e.coefficients.size(); ++f) {
    if (std::abs(e.coefficients[f]) > tol.weight * cmax) {
      survivors.push_back(f);
      coef_re = std::max(coef_re, std::abs(e.coefficients[f].real()));
    }
  }
  const double root_imag_tol = tol.imag * (1.0 + root_re);
  const double coef_imag_tol = tol.imag * (1.0 + coef_re);

  for (std::size_t f : survivors) {
    const auto g = e.grid_index(f);
    const Complex c = e.coefficients[f];
    Atom atom;
    atom.grid_index = g;
    for (std::size_t l = 0; l < e.dim(); ++l) {
      const Complex r = e.roots[l][g[l]];
      if (std::abs(r.imag()) > root_imag_tol) {
        throw Error(ErrorKind::ComplexAtom,
                    "surviving term at grid " + grid_string(g) + " has non-real coordinate " +
                        std::to_string(r.real()) + (r.imag() < 0 ? "" : "+") + std::to_string(r.imag()) +
                        "i in variable " + std::to_string(l + 1))
            .with_grid_index(g);
      }
      atom.point.push_back(r.real());
    }
    if (std::abs(c.imag()) > coef_imag_tol) {
      throw Error(ErrorKind::ComplexAtom,
                  "surviving term at grid " + grid_string(g) + " has non-real weight")
          .with_grid_index(g);
    }
    if (c.real() <= 0.0) {
      throw Error(ErrorKind::NegativeWeight,
                  "surviving term at grid " + grid_string(g) + " has weight " + std::to_string(c.real()))
          .with_grid_index(g);
    }
    atom.weight = c.real();
    mu.atoms.push_back(std::move(atom));
  }
  return mu;
}

TruncatedSequence evaluate_moments(const AtomicMeasure& mu, int degree) {
  if (degree < 0) throw Error(ErrorKind::InvalidArgument, "moment degree must be >= 0");
  const std::size_t d = mu.dim;
  const auto basis = enumerate_basis(d, degree);
  std::vector<double> values(basis.size(), 0.0);
  for (const Atom& a : mu.atoms) {
    if (a.point.size() != d) throw Error(ErrorKind::DimensionMismatch, "atom dimension differs from measure");
    std::vector<std::vector<double>> pw(d);
    for (std::size_t l = 0; l < d; ++l) pw[l] = powers(a.point[l], degree);
    for (std::size_t r = 0; r < basis.size(); ++r) {
      double t = a.weight;
      for (std::size_t l = 0; l < d; ++l) t *= pw[l][static_cast<std::size_t>(basis[r][l])];
      values[r] += t;
    }
  }
  return TruncatedSequence(d, degree, std::move(values));
}

MultivariatePoly lagrange_interpolant(const BinetExpansion& e, std::span<const std::size_t> grid,
                                      double tol_imag) {
  (void)e.flat_index(grid);  // range check
  const std::size_t d = e.dim();
  MultivariatePoly result = MultivariatePoly::constant(d, 1.0);
  for (std::size_t k = 0; k < d; ++k) {
    const auto& rs = e.roots[k];
    double scale = 0.0;
    for (const Complex& r : rs) scale = std::max(scale, std::abs(r.real()));
    for (const Complex& r : rs) {
      if (std::abs(r.imag()) > tol_imag * (1.0 + scale)) {
        throw Error(ErrorKind::ComplexAtom, "interpolation needs real roots in variable " + std::to_string(k + 1))
            .with_variable(k);
      }
    }
    const double at = rs[grid[k]].real();
    UnivariatePoly basis{1.0};
    for (std::size_t j = 0; j < rs.size(); ++j) {
      if (j == grid[k]) continue;
      const double other = rs[j].real();
      basis = basis * UnivariatePoly{-other / (at - other), 1.0 / (at - other)};
    }
    result = result * MultivariatePoly::embed(basis, d, k);
  }
  return result;
}

}  // namespace kmoment
