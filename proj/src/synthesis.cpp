#include "kmoment/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "kmoment/error.hpp"

namespace kmoment {

double FixtureRng::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::size_t FixtureRng::integer(std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
}

AtomicMeasure random_grid_measure(FixtureRng& rng, const RandomMeasureSpec& spec) {
  if (spec.dim == 0 || spec.max_coords_per_variable == 0 || spec.max_atoms == 0) {
    throw Error(ErrorKind::InvalidArgument, "random measure needs dim, coords and atoms >= 1");
  }
  std::vector<std::vector<double>> coords(spec.dim);
  std::size_t grid_size = 1;
  for (auto& c : coords) {
    const std::size_t r = rng.integer(1, spec.max_coords_per_variable);
    while (c.size() < r) {
      const double x = rng.uniform(-spec.coord_bound, spec.coord_bound);
      const bool far = std::all_of(c.begin(), c.end(), [&](double y) { return std::abs(x - y) >= spec.min_separation; });
      if (far) c.push_back(x);
    }
    std::sort(c.begin(), c.end());
    grid_size *= r;
  }
  const std::size_t n_atoms = rng.integer(1, std::min(spec.max_atoms, grid_size));
  std::set<std::size_t> chosen;
  while (chosen.size() < n_atoms) chosen.insert(rng.integer(0, grid_size - 1));

  AtomicMeasure mu;
  mu.dim = spec.dim;
  for (std::size_t flat : chosen) {
    Atom a;
    a.point.resize(spec.dim);
    std::size_t rest = flat;
    for (std::size_t l = spec.dim; l-- > 0;) {
      a.point[l] = coords[l][rest % coords[l].size()];
      rest /= coords[l].size();
    }
    a.weight = rng.uniform(spec.min_weight, spec.max_weight);
    mu.atoms.push_back(std::move(a));
  }
  return mu;
}

std::vector<std::size_t> distinct_coordinates(const AtomicMeasure& mu) {
  std::vector<std::size_t> out(mu.dim);
  for (std::size_t l = 0; l < mu.dim; ++l) {
    std::set<double> values;
    for (const Atom& a : mu.atoms) values.insert(a.point[l]);
    out[l] = values.size();
  }
  return out;
}

int support_tau(const AtomicMeasure& mu) {
  int t = 0;
  for (std::size_t r : distinct_coordinates(mu)) t += static_cast<int>(r) - 1;
  return t;
}

}  // namespace kmoment
