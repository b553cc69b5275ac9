#include "kmoment/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include <Eigen/QR>

#include "kmoment/error.hpp"

namespace kmoment {

int CharacteristicSystem::tau() const {
  int t = 0;
  for (const auto& p : polys) t += p.degree() - 1;
  return t;
}

std::optional<RecurrenceFit> fit_recurrence(const TruncatedSequence& beta, std::size_t var, int degree) {
  const std::size_t d = beta.dim();
  if (var >= d) throw Error(ErrorKind::DimensionMismatch, "recurrence variable out of range");
  if (degree < 1) throw Error(ErrorKind::InvalidArgument, "recurrence degree must be >= 1");
  // The slice through the origin must overdetermine the fit by itself. Rows from
  // other bases can be exact multiples of it (a variable with one coordinate),
  // so their count alone does not validate a candidate.
  if (2 * degree > beta.max_degree()) return std::nullopt;
  const auto bases = enumerate_basis(d, beta.max_degree() - degree);
  const auto rows = static_cast<Eigen::Index>(bases.size());

  Eigen::MatrixXd a(rows, degree);
  Eigen::VectorXd b(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const MultiIndex& i = bases[static_cast<std::size_t>(r)];
    b(r) = beta[i + MultiIndex::unit(d, var, degree)];
    for (int k = 1; k <= degree; ++k) a(r, k - 1) = beta[i + MultiIndex::unit(d, var, degree - k)];
    const double scale = std::max(a.row(r).cwiseAbs().maxCoeff(), std::abs(b(r)));
    if (scale > 0.0) {
      a.row(r) /= scale;
      b(r) /= scale;
    }
  }
  const Eigen::VectorXd coef = a.completeOrthogonalDecomposition().solve(b);
  const double bnorm = b.norm();
  const double rnorm = (a * coef - b).norm();
  double residual = 0.0;
  if (bnorm > 0.0) {
    residual = rnorm / bnorm;
  } else if (rnorm > 0.0) {
    residual = rnorm;
  }
  std::vector<double> ak(coef.data(), coef.data() + coef.size());
  return RecurrenceFit{UnivariatePoly::from_recurrence(ak), residual};
}

RecurrenceFit detect_minimal_recurrence(const TruncatedSequence& beta, std::size_t var, double tol) {
  double best = std::numeric_limits<double>::infinity();
  for (int s = 1;; ++s) {
    auto fit = fit_recurrence(beta, var, s);
    if (!fit) break;
    if (fit->residual < tol) return *std::move(fit);
    best = std::min(best, fit->residual);
  }
  std::string msg = "no recurrence along variable " + std::to_string(var + 1) +
                    " fits the data of degree " + std::to_string(beta.max_degree());
  if (std::isfinite(best)) msg += " (best residual " + std::to_string(best) + ")";
  throw Error(ErrorKind::NoRecurrence, msg).with_variable(var);
}

CharacteristicSystem detect_characteristic_system(const TruncatedSequence& beta, double tol) {
  CharacteristicSystem sys;
  for (std::size_t l = 0; l < beta.dim(); ++l) {
    RecurrenceFit fit = detect_minimal_recurrence(beta, l, tol);
    sys.residual = std::max(sys.residual, fit.residual);
    sys.polys.push_back(std::move(fit.poly));
  }
  return sys;
}

TruncatedSequence extend_sequence(const TruncatedSequence& beta, const CharacteristicSystem& sys,
                                  int target_degree, double consistency_tol,
                                  std::span<const std::size_t> variable_order) {
  const std::size_t d = beta.dim();
  if (sys.dim() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                "system has " + std::to_string(sys.dim()) + " polynomials for a " + std::to_string(d) +
                    "-dimensional sequence");
  }
  if (target_degree <= beta.max_degree()) return beta.truncated(target_degree);

  std::vector<std::size_t> order(variable_order.begin(), variable_order.end());
  if (order.empty()) {
    order.resize(d);
    std::iota(order.begin(), order.end(), 0);
  }
  std::vector<std::vector<double>> rec(d);
  for (std::size_t l = 0; l < d; ++l) {
    if (sys.polys[l].degree() < 1) {
      throw Error(ErrorKind::InvalidArgument, "characteristic polynomial of degree < 1").with_variable(l);
    }
    rec[l] = sys.polys[l].recurrence_coefficients();
  }

  const auto basis = enumerate_basis(d, target_degree);
  std::vector<double> values(basis.size(), 0.0);
  std::copy(beta.values().begin(), beta.values().end(), values.begin());

  for (std::size_t r = beta.size(); r < basis.size(); ++r) {
    const MultiIndex& i = basis[r];
    bool have = false;
    double value = 0.0;
    double value_scale = 0.0;
    std::size_t source = 0;
    for (std::size_t l : order) {
      const int s = static_cast<int>(rec[l].size());
      if (i[l] < s) continue;
      double v = 0.0;
      double scale = 0.0;
      MultiIndex j = i;
      for (int k = 1; k <= s; ++k) {
        j[l] = i[l] - k;
        const double t = rec[l][static_cast<std::size_t>(k - 1)] * values[degree_lex_rank(j, d)];
        v += t;
        scale += std::abs(t);
      }
      if (!have) {
        have = true;
        value = v;
        value_scale = scale;
        source = l;
      } else if (std::abs(v - value) > consistency_tol * std::max(scale, value_scale)) {
        throw Error(ErrorKind::InconsistentRecurrence,
                    "recurrences along variables " + std::to_string(source + 1) + " and " +
                        std::to_string(l + 1) + " disagree at a degree-" + std::to_string(i.degree()) +
                        " moment (" + std::to_string(value) + " vs " + std::to_string(v) + ")")
            .with_variable(l);
      }
    }
    if (!have) {
      throw Error(ErrorKind::InsufficientInitialData,
                  "a degree-" + std::to_string(i.degree()) +
                      " moment lies in the initial window but is missing from the data");
    }
    values[r] = value;
  }
  return TruncatedSequence(d, target_degree, std::move(values));
}

double annihilation_residual(const MomentMatrix& m, const CharacteristicSystem& sys) {
  const std::size_t d = m.dim();
  if (sys.dim() != d) throw Error(ErrorKind::DimensionMismatch, "system and matrix dimensions differ");
  const double mnorm = m.entries.norm();
  double worst = 0.0;
  for (std::size_t l = 0; l < d; ++l) {
    if (sys.polys[l].degree() > m.order) {
      throw Error(ErrorKind::InsufficientData,
                  "matrix order " + std::to_string(m.order) + " cannot hold a degree-" +
                      std::to_string(sys.polys[l].degree()) + " polynomial")
          .with_variable(l);
    }
    const Eigen::VectorXd v = MultivariatePoly::embed(sys.polys[l], d, l).coefficient_vector(m.order);
    const double denom = mnorm * v.norm();
    const double num = (m.entries * v).norm();
    if (denom == 0.0) {
      if (num > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, num / denom);
  }
  return worst;
}

bool verify_annihilation(const MomentMatrix& m, const CharacteristicSystem& sys, double tol) {
  return annihilation_residual(m, sys) <= tol;
}

}  // namespace kmoment
