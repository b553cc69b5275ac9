#ifndef KMOMENT_RECURRENCE_HPP
#define KMOMENT_RECURRENCE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kmoment/moments.hpp"
#include "kmoment/polynomial.hpp"

namespace kmoment {

/// One monic characteristic polynomial per variable.
struct CharacteristicSystem {
  std::vector<UnivariatePoly> polys;
  /// Worst relative fit residual seen during detection.
  double residual = 0.0;

  std::size_t dim() const noexcept { return polys.size(); }
  /// sum_l (deg p_l - 1)
  int tau() const;
};

struct RecurrenceFit {
  UnivariatePoly poly;
  double residual = 0.0;
};

/// Least-squares fit of a degree-`degree` recurrence along `var`, stacked over
/// every index i with |i| + degree <= max_degree. Each equation is scaled by
/// its largest magnitude before solving, so every slice position counts
/// equally. Returns std::nullopt unless 2 * degree <= max_degree, i.e. unless
/// the coordinate slice through the origin alone has more equations than
/// unknowns.
std::optional<RecurrenceFit> fit_recurrence(const TruncatedSequence& beta, std::size_t var, int degree);

/// Smallest-degree monic p with a joint fit residual below tol.
/// Throws NoRecurrence if no data-supported degree fits.
RecurrenceFit detect_minimal_recurrence(const TruncatedSequence& beta, std::size_t var,
                                        double tol = 1e-8);

CharacteristicSystem detect_characteristic_system(const TruncatedSequence& beta, double tol = 1e-8);

/// Fills moments up to target_degree from the recurrences. New entries are
/// produced in degree-lex order by the first variable in `variable_order`
/// (identity if empty) whose recurrence applies; every other applicable
/// recurrence must agree to consistency_tol relative to the magnitude of its
/// terms.
TruncatedSequence extend_sequence(const TruncatedSequence& beta, const CharacteristicSystem& sys,
                                  int target_degree, double consistency_tol = 1e-7,
                                  std::span<const std::size_t> variable_order = {});

/// True iff ||M vec(p_l)|| <= tol * ||M||_F * ||p_l|| for every l, with p_l
/// placed on the powers of x_l.
bool verify_annihilation(const MomentMatrix& m, const CharacteristicSystem& sys, double tol = 1e-10);

/// max_l ||M vec(p_l)|| / (||M||_F ||p_l||), the quantity verify_annihilation thresholds.
double annihilation_residual(const MomentMatrix& m, const CharacteristicSystem& sys);

}  // namespace kmoment

#endif  // KMOMENT_RECURRENCE_HPP
