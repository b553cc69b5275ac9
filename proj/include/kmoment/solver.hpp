#ifndef KMOMENT_SOLVER_HPP
#define KMOMENT_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kmoment/binet.hpp"
#include "kmoment/error.hpp"
#include "kmoment/moments.hpp"
#include "kmoment/polynomial.hpp"
#include "kmoment/recurrence.hpp"

namespace kmoment {

struct Tolerances {
  double rank = 1e-8;         // singular value cutoff relative to sigma_max
  double psd = 1e-8;          // eigenvalue slack relative to 1 + |trace|
  double imag = 1e-7;         // admissible imaginary part, relative to 1 + max |Re|
  double weight = 1e-8;       // coefficient pruning relative to max |c|
  double residual = 1e-6;     // admissible moment residual of the recovered measure
  double fit = 1e-8;          // relative residual for accepting a recurrence
  double consistency = 1e-7;  // agreement of competing recurrences while extending
  double support = 1e-6;      // |q(atom)| scale for zero-set and support tests
};

struct SolveOptions {
  Tolerances tol;
  /// Prefer variables d..1 instead of 1..d when extending and when eliminating
  /// Binet modes. Both orders must give the same measure.
  bool reverse_variable_order = false;
};

/// {t : q_i(t) >= 0 for all i}
struct SemialgebraicSet {
  std::vector<MultivariatePoly> constraints;
};

enum class SolveStatus { Success, NotRecursive, NotPositive, NegativeWeight, ComplexAtom, SupportViolation };

std::string_view to_string(SolveStatus s);
std::optional<SolveStatus> parse_status(std::string_view s);

struct MatrixDiagnostics {
  int order = 0;
  double min_eigenvalue = 0.0;
  bool is_psd = false;
  std::size_t rank = 0;
  double spectral_norm = 0.0;
};

struct ConstraintRecord {
  MultivariatePoly q;
  int localizing_order = -1;
  /// Rank cutoff is relative to max(||M_q||, ||M(tau+1)||).
  MatrixDiagnostics localizing;
  std::size_t atoms_in_zero_set = 0;
  double min_value = 0.0;          // min over atoms of q(atom)
  bool atom_count_law = false;     // atoms_in_zero_set == rank M(tau+1) - rank M_q
  bool satisfied = false;          // q(atom) >= -tol at every atom
};

struct SolveReport {
  SolveStatus status = SolveStatus::NotRecursive;
  std::string diagnostic;
  Tolerances tolerances;

  std::optional<CharacteristicSystem> system;
  int tau = -1;
  int input_degree = -1;
  int extended_degree = -1;
  std::vector<MatrixDiagnostics> psd_results;  // M(tau), M(tau+1)
  double binet_residual = 0.0;
  /// Outcome of converting the Binet expansion into a measure. Recorded even
  /// when an earlier stage already failed, as supporting evidence.
  std::optional<ErrorKind> expansion_error;
  std::vector<std::size_t> offending_grid_index;
  std::optional<std::size_t> offending_variable;

  std::optional<AtomicMeasure> measure;
  double moment_residual = 0.0;
  std::vector<ConstraintRecord> constraints;
  /// Constraint index and atom index of the first support violation.
  std::optional<std::size_t> violated_constraint;
  std::optional<std::size_t> violating_atom;
};

/// Detect recurrences, extend to degree 2(tau+1), check M(tau) and M(tau+1),
/// expand, and convert to a measure. Every failure is reported through the
/// status; nothing propagates.
SolveReport solve_full(const TruncatedSequence& beta, const SolveOptions& options = {});

/// solve_full followed by the localizing and pointwise support analysis of
/// each constraint.
SolveReport solve_constrained(const TruncatedSequence& beta, const SemialgebraicSet& k,
                              const SolveOptions& options = {});

struct FlatExtensionResult {
  bool flat = false;
  std::size_t rank_n = 0;
  std::size_t rank_n1 = 0;
};

/// rank M(n+1) == rank M(n), extending beta through sys when it is too short.
FlatExtensionResult flat_extension_check(const TruncatedSequence& beta, const CharacteristicSystem& sys,
                                         int n, const Tolerances& tol = {});

/// Atoms with |q(atom)| <= tol * (1 + max |coef of q|).
std::size_t count_atoms_in_zero_set(const AtomicMeasure& mu, const MultivariatePoly& q, double tol = 1e-6);

/// max over |i| <= beta.max_degree of |beta_i - sum w point^i| / (1 + |beta_i|).
double verify_measure(const AtomicMeasure& mu, const TruncatedSequence& beta);

}  // namespace kmoment

#endif  // KMOMENT_SOLVER_HPP
