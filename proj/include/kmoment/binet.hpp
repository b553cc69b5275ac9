#ifndef KMOMENT_BINET_HPP
#define KMOMENT_BINET_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "kmoment/moments.hpp"
#include "kmoment/polynomial.hpp"
#include "kmoment/recurrence.hpp"

namespace kmoment {

using Complex = std::complex<double>;

/// A (root, coefficient) pair of a one-dimensional exponential sum
/// s_k = sum c_i lambda_i^k.
struct BinetTerm {
  Complex root;
  Complex coefficient;
};

/// beta_i = sum over the root grid g of c_g * prod_l lambda_(l, g_l)^(i_l).
struct BinetExpansion {
  std::vector<std::vector<Complex>> roots;  // per variable, sorted as poly_roots returns them
  std::vector<Complex> coefficients;        // row-major over the grid, last variable fastest
  double source_residual = 0.0;

  std::size_t dim() const noexcept { return roots.size(); }
  std::vector<std::size_t> shape() const;
  std::size_t flat_index(std::span<const std::size_t> grid) const;
  std::vector<std::size_t> grid_index(std::size_t flat) const;
  Complex coefficient(std::span<const std::size_t> grid) const {
    return coefficients[flat_index(grid)];
  }
};

struct Atom {
  std::vector<double> point;
  double weight = 0.0;
  /// Position of the atom on the root grid; empty for measures read from input.
  std::vector<std::size_t> grid_index;
};

/// sum_l weight_l * delta_(point_l)
struct AtomicMeasure {
  std::size_t dim = 0;
  std::vector<Atom> atoms;
};

/// Solves the Vandermonde system sum_i c_i lambda_i^k = initial[k], k < deg p.
/// Throws RepeatedRoots if p has a multiple root.
std::vector<BinetTerm> univariate_binet(const UnivariatePoly& p, std::span<const double> initial);

/// Coefficient tensor of the multivariate expansion, solved one variable at a
/// time over the initial block prod_l {0, ..., deg p_l - 1}. The modes are
/// eliminated in `mode_order` (identity if empty). source_residual is the
/// worst |beta_i - expansion_i| / (1 + |beta_i|) over every entry of beta.
BinetExpansion multivariate_binet(const CharacteristicSystem& sys, const TruncatedSequence& beta,
                                  std::span<const std::size_t> mode_order = {});

struct MeasureTolerances {
  /// Imaginary parts are allowed up to tol_imag * (1 + max |Re|) of the
  /// quantity being checked.
  double imag = 1e-7;
  /// Coefficients with |c| <= weight * max|c| are pruned.
  double weight = 1e-8;
};

/// Prunes negligible coefficients, then requires every survivor to be a real
/// positive weight at a real grid point. Throws NegativeWeight or ComplexAtom
/// carrying the offending grid index.
AtomicMeasure expansion_to_measure(const BinetExpansion& e, MeasureTolerances tol = {});

/// beta_i = sum weight * point^i for all |i| <= degree.
TruncatedSequence evaluate_moments(const AtomicMeasure& mu, int degree);

/// prod_k l_(k, s_k)(x_k), where l_(k, j) is the univariate Lagrange basis
/// polynomial over the roots of p_k. Equals 1 at grid point s and 0 at every
/// other grid point.
MultivariatePoly lagrange_interpolant(const BinetExpansion& e, std::span<const std::size_t> grid,
                                      double tol_imag = 1e-7);

}  // namespace kmoment

#endif  // KMOMENT_BINET_HPP
