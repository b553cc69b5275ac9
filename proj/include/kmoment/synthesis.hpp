#ifndef KMOMENT_SYNTHESIS_HPP
#define KMOMENT_SYNTHESIS_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "kmoment/binet.hpp"

namespace kmoment {

/// Shape of a random positive measure supported on a product grid.
struct RandomMeasureSpec {
  std::size_t dim = 2;
  std::size_t max_coords_per_variable = 4;
  double coord_bound = 2.0;      // coordinates drawn from [-bound, bound]
  double min_separation = 0.2;   // between coordinates of one variable
  double min_weight = 0.1;
  double max_weight = 5.0;
  std::size_t max_atoms = 8;
};

/// Deterministic generator: the output depends only on the seed and the spec,
/// not on the standard library's distribution implementations.
class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  std::size_t integer(std::size_t lo, std::size_t hi);

 private:
  std::mt19937_64 engine_;
};

/// Draws per-variable coordinate sets, then distinct atoms on their product
/// grid with weights in [min_weight, max_weight]. Atoms are listed in grid
/// order.
AtomicMeasure random_grid_measure(FixtureRng& rng, const RandomMeasureSpec& spec);

/// Number of distinct values of each coordinate over the atoms.
std::vector<std::size_t> distinct_coordinates(const AtomicMeasure& mu);

/// sum over variables of (distinct coordinates - 1).
int support_tau(const AtomicMeasure& mu);

}  // namespace kmoment

#endif  // KMOMENT_SYNTHESIS_HPP
