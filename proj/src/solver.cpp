#include "kmoment/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "kmoment/error.hpp"

namespace kmoment {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Success: return "Success";
    case SolveStatus::NotRecursive: return "NotRecursive";
    case SolveStatus::NotPositive: return "NotPositive";
    case SolveStatus::NegativeWeight: return "NegativeWeight";
    case SolveStatus::ComplexAtom: return "ComplexAtom";
    case SolveStatus::SupportViolation: return "SupportViolation";
  }
  return "Unknown";
}

std::optional<SolveStatus> parse_status(std::string_view s) {
  for (SolveStatus st : {SolveStatus::Success, SolveStatus::NotRecursive, SolveStatus::NotPositive,
                         SolveStatus::NegativeWeight, SolveStatus::ComplexAtom, SolveStatus::SupportViolation}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

namespace {

std::vector<std::size_t> variable_order(std::size_t d, bool reverse) {
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  if (reverse) std::reverse(order.begin(), order.end());
  return order;
}

MatrixDiagnostics diagnose(const MomentMatrix& m, const Tolerances& tol, double reference_scale = 0.0) {
  const PsdResult psd = psd_check(m, tol.psd);
  return {m.order, psd.min_eigenvalue, psd.is_psd, numeric_rank(m, tol.rank, reference_scale),
          spectral_norm(m.entries)};
}

struct Pipeline {
  SolveReport report;
  TruncatedSequence extended;
};

// Runs every stage up to and including the measure check. `extra_degree`
// raises the extension so localizing matrices of that degree reach order tau+1.
Pipeline run_pipeline(const TruncatedSequence& beta, const SolveOptions& options, int extra_degree) {
  Pipeline out;
  SolveReport& rep = out.report;
  const Tolerances& tol = options.tol;
  rep.tolerances = tol;
  rep.input_degree = beta.max_degree();
  const auto order = variable_order(beta.dim(), options.reverse_variable_order);

  CharacteristicSystem sys;
  try {
    sys = detect_characteristic_system(beta, tol.fit);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRecurrence) throw;
    rep.status = SolveStatus::NotRecursive;
    rep.diagnostic = e.what();
    rep.offending_variable = e.variable();
    return out;
  }
  rep.system = sys;
  rep.tau = sys.tau();

  const int target = std::max(beta.max_degree(), 2 * (rep.tau + 1) + std::max(extra_degree, 0));
  try {
    out.extended = extend_sequence(beta, sys, target, tol.consistency, order);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InconsistentRecurrence && e.kind() != ErrorKind::InsufficientInitialData) throw;
    rep.status = SolveStatus::NotRecursive;
    rep.diagnostic = e.what();
    rep.offending_variable = e.variable();
    return out;
  }
  rep.extended_degree = out.extended.max_degree();

  bool positive = true;
  std::ostringstream psd_msg;
  for (int k : {rep.tau, rep.tau + 1}) {
    const MatrixDiagnostics diag = diagnose(build_moment_matrix(out.extended, k), tol);
    if (!diag.is_psd && positive) {
      positive = false;
      psd_msg << "M(" << k << ") is not positive semidefinite (min eigenvalue " << diag.min_eigenvalue << ")";
    }
    rep.psd_results.push_back(diag);
  }

  std::optional<AtomicMeasure> mu;
  std::string expansion_msg;
  try {
    const BinetExpansion e = multivariate_binet(sys, out.extended, order);
    rep.binet_residual = e.source_residual;
    mu = expansion_to_measure(e, {tol.imag, tol.weight});
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::RepeatedRoots:
      case ErrorKind::NegativeWeight:
      case ErrorKind::ComplexAtom:
        rep.expansion_error = e.kind();
        rep.offending_grid_index = e.grid_index();
        if (e.variable()) rep.offending_variable = e.variable();
        expansion_msg = e.what();
        break;
      default:
        throw;
    }
  }

  if (!positive) {
    rep.status = SolveStatus::NotPositive;
    rep.diagnostic = psd_msg.str();
    if (!expansion_msg.empty()) rep.diagnostic += "; expansion: " + expansion_msg;
    return out;
  }
  if (rep.expansion_error) {
    switch (*rep.expansion_error) {
      case ErrorKind::NegativeWeight: rep.status = SolveStatus::NegativeWeight; break;
      case ErrorKind::ComplexAtom: rep.status = SolveStatus::ComplexAtom; break;
      default: rep.status = SolveStatus::NotPositive; break;
    }
    rep.diagnostic = expansion_msg;
    return out;
  }

  rep.moment_residual = verify_measure(*mu, beta);
  if (rep.moment_residual > tol.residual) {
    std::ostringstream msg;
    msg << "the recurrence expansion does not reproduce the data (residual " << rep.moment_residual << ")";
    rep.status = SolveStatus::NotRecursive;
    rep.diagnostic = msg.str();
    return out;
  }
  const std::size_t rank = rep.psd_results.back().rank;
  if (mu->atoms.size() != rank) {
    std::ostringstream msg;
    msg << "recovered " << mu->atoms.size() << " atoms but rank M(" << rep.tau + 1 << ") = " << rank;
    rep.status = SolveStatus::NotRecursive;
    rep.diagnostic = msg.str();
    return out;
  }
  rep.measure = std::move(mu);
  rep.status = SolveStatus::Success;
  return out;
}

}  // namespace

SolveReport solve_full(const TruncatedSequence& beta, const SolveOptions& options) {
  return run_pipeline(beta, options, 0).report;
}

SolveReport solve_constrained(const TruncatedSequence& beta, const SemialgebraicSet& k,
                              const SolveOptions& options) {
  int extra = 0;
  for (const auto& q : k.constraints) {
    if (q.dim() != beta.dim()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "constraint dimension " + std::to_string(q.dim()) + " vs sequence dimension " +
                      std::to_string(beta.dim()));
    }
    extra = std::max(extra, q.degree());
  }
  Pipeline p = run_pipeline(beta, options, extra);
  SolveReport& rep = p.report;
  if (rep.status != SolveStatus::Success) return rep;

  const Tolerances& tol = options.tol;
  const AtomicMeasure& mu = *rep.measure;
  const std::size_t rank = rep.psd_results.back().rank;
  for (std::size_t ci = 0; ci < k.constraints.size(); ++ci) {
    const MultivariatePoly& q = k.constraints[ci];
    ConstraintRecord rec;
    rec.q = q;
    rec.localizing_order = max_localizing_order(p.extended.max_degree(), q.degree());
    rec.localizing = diagnose(build_localizing_matrix(p.extended, q, rec.localizing_order), tol,
                              rep.psd_results.back().spectral_norm);
    rec.atoms_in_zero_set = count_atoms_in_zero_set(mu, q, tol.support);
    rec.atom_count_law = rank >= rec.localizing.rank && rec.atoms_in_zero_set == rank - rec.localizing.rank;

    const double slack = tol.support * (1.0 + q.max_abs_coeff());
    rec.min_value = std::numeric_limits<double>::infinity();
    rec.satisfied = true;
    for (std::size_t ai = 0; ai < mu.atoms.size(); ++ai) {
      const double v = q.evaluate(mu.atoms[ai].point);
      rec.min_value = std::min(rec.min_value, v);
      if (v < -slack && rec.satisfied) {
        rec.satisfied = false;
        if (!rep.violated_constraint) {
          rep.violated_constraint = ci;
          rep.violating_atom = ai;
        }
      }
    }
    if (mu.atoms.empty()) rec.min_value = 0.0;
    rep.constraints.push_back(std::move(rec));
  }
  if (rep.violated_constraint) {
    const Atom& a = mu.atoms[*rep.violating_atom];
    std::ostringstream msg;
    msg << "atom (";
    for (std::size_t l = 0; l < a.point.size(); ++l) msg << (l ? ", " : "") << a.point[l];
    msg << ") violates constraint " << *rep.violated_constraint + 1 << " (value "
        << k.constraints[*rep.violated_constraint].evaluate(a.point) << ")";
    rep.status = SolveStatus::SupportViolation;
    rep.diagnostic = msg.str();
  }
  return rep;
}

FlatExtensionResult flat_extension_check(const TruncatedSequence& beta, const CharacteristicSystem& sys,
                                         int n, const Tolerances& tol) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "flat extension order must be >= 0");
  const TruncatedSequence data =
      beta.max_degree() >= 2 * n + 2 ? beta : extend_sequence(beta, sys, 2 * n + 2, tol.consistency);
  FlatExtensionResult r;
  r.rank_n = numeric_rank(build_moment_matrix(data, n), tol.rank);
  r.rank_n1 = numeric_rank(build_moment_matrix(data, n + 1), tol.rank);
  r.flat = r.rank_n == r.rank_n1;
  return r;
}

std::size_t count_atoms_in_zero_set(const AtomicMeasure& mu, const MultivariatePoly& q, double tol) {
  if (!mu.atoms.empty() && q.dim() != mu.dim) {
    throw Error(ErrorKind::DimensionMismatch, "constraint and measure dimensions differ");
  }
  const double slack = tol * (1.0 + q.max_abs_coeff());
  return static_cast<std::size_t>(std::count_if(mu.atoms.begin(), mu.atoms.end(), [&](const Atom& a) {
    return std::abs(q.evaluate(a.point)) <= slack;
  }));
}

double verify_measure(const AtomicMeasure& mu, const TruncatedSequence& beta) {
  AtomicMeasure m = mu;
  if (m.atoms.empty() && m.dim == 0) m.dim = beta.dim();
  if (m.dim != beta.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "measure dimension " + std::to_string(m.dim) + " vs sequence dimension " +
                    std::to_string(beta.dim()));
  }
  const TruncatedSequence model = evaluate_moments(m, beta.max_degree());
  double worst = 0.0;
  for (std::size_t r = 0; r < beta.size(); ++r) {
    const double b = beta.at_rank(r);
    worst = std::max(worst, std::abs(b - model.at_rank(r)) / (1.0 + std::abs(b)));
  }
  return worst;
}

}  // namespace kmoment
