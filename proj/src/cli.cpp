#include "kmoment/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>

#include "CLI11.hpp"

#include "kmoment/error.hpp"
#include "kmoment/json_io.hpp"
#include "kmoment/solver.hpp"
#include "kmoment/synthesis.hpp"

namespace kmoment::cli {

namespace {

struct Config {
  std::string in;
  std::string out;
  std::string measure;
  std::string measure_out;
  std::string constraints;
  std::string localize;
  std::optional<int> order;
  std::optional<int> degree;
  std::optional<std::size_t> dim;
  std::uint64_t seed = 0;
  Tolerances tol;
};

void add_tolerances(CLI::App* cmd, Config& cfg, bool all) {
  cmd->add_option("--tol-rank", cfg.tol.rank, "rank cutoff relative to sigma_max")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-psd", cfg.tol.psd, "PSD slack relative to 1+|trace|")->check(CLI::PositiveNumber);
  if (!all) return;
  cmd->add_option("--tol-fit", cfg.tol.fit, "relative residual accepting a recurrence")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-residual", cfg.tol.residual, "admissible moment residual")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-imag", cfg.tol.imag, "admissible imaginary part")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-weight", cfg.tol.weight, "coefficient pruning threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--tol-support", cfg.tol.support, "zero-set and support tolerance")->check(CLI::PositiveNumber);
}

void emit(const io::json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << io::dump(j);
  } else {
    io::write_file(path, j);
  }
}

int status_code(SolveStatus s) { return s == SolveStatus::Success ? kExitOk : kExitNegative; }

int cmd_synthesize(const Config& cfg, std::ostream& out) {
  AtomicMeasure mu;
  if (!cfg.measure.empty()) {
    mu = io::measure_from_json(io::read_file(cfg.measure), cfg.measure);
  } else {
    if (!cfg.dim) throw Error(ErrorKind::MalformedInput, "synthesize: pass --measure or --dim for a random measure");
    FixtureRng rng(cfg.seed);
    RandomMeasureSpec spec;
    spec.dim = *cfg.dim;
    mu = random_grid_measure(rng, spec);
  }
  if (!cfg.measure_out.empty()) io::write_file(cfg.measure_out, io::to_json(mu));
  emit(io::to_json(evaluate_moments(mu, *cfg.degree)), cfg.out, out);
  return kExitOk;
}

MomentMatrix requested_matrix(const Config& cfg, const TruncatedSequence& beta) {
  if (!cfg.localize.empty()) {
    const MultivariatePoly q = io::multivariate_from_json(io::read_file(cfg.localize), cfg.localize);
    const int order = cfg.order.value_or(max_localizing_order(beta.max_degree(), q.degree()));
    return build_localizing_matrix(beta, q, order);
  }
  return build_moment_matrix(beta, cfg.order.value_or(beta.max_degree() / 2));
}

int cmd_matrix(const Config& cfg, std::ostream& out) {
  const TruncatedSequence beta = io::sequence_from_json(io::read_file(cfg.in), cfg.in);
  emit(io::to_json(requested_matrix(cfg, beta)), cfg.out, out);
  return kExitOk;
}

int cmd_psd(const Config& cfg, std::ostream& out) {
  const TruncatedSequence beta = io::sequence_from_json(io::read_file(cfg.in), cfg.in);
  const MomentMatrix m = requested_matrix(cfg, beta);
  const PsdResult r = psd_check(m, cfg.tol.psd);
  out << std::setprecision(17) << "order " << m.order << "\n"
      << "min_eigenvalue " << r.min_eigenvalue << "\n"
      << "rank " << numeric_rank(m, cfg.tol.rank) << "\n"
      << "verdict " << (r.is_psd ? "PSD" : "NOT_PSD") << "\n";
  return r.is_psd ? kExitOk : kExitNegative;
}

int cmd_recurrence(const Config& cfg, std::ostream& out, std::ostream& err) {
  const TruncatedSequence beta = io::sequence_from_json(io::read_file(cfg.in), cfg.in);
  try {
    emit(io::to_json(detect_characteristic_system(beta, cfg.tol.fit)), cfg.out, out);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRecurrence) throw;
    err << "NoRecurrence: " << e.what() << "\n";
    return kExitNegative;
  }
  return kExitOk;
}

int cmd_extend(const Config& cfg, std::ostream& out, std::ostream& err) {
  const TruncatedSequence beta = io::sequence_from_json(io::read_file(cfg.in), cfg.in);
  try {
    const CharacteristicSystem sys = detect_characteristic_system(beta, cfg.tol.fit);
    emit(io::to_json(extend_sequence(beta, sys, *cfg.degree, cfg.tol.consistency)), cfg.out, out);
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::NoRecurrence:
      case ErrorKind::InconsistentRecurrence:
      case ErrorKind::InsufficientInitialData:
        err << to_string(e.kind()) << ": " << e.what() << "\n";
        return kExitNegative;
      default:
        throw;
    }
  }
  return kExitOk;
}

int cmd_solve(const Config& cfg, std::ostream& out, bool constrained) {
  const TruncatedSequence beta = io::sequence_from_json(io::read_file(cfg.in), cfg.in);
  SolveOptions opts;
  opts.tol = cfg.tol;
  SolveReport rep;
  if (constrained) {
    const SemialgebraicSet k = io::constraints_from_json(io::read_file(cfg.constraints), cfg.constraints);
    rep = solve_constrained(beta, k, opts);
  } else {
    rep = solve_full(beta, opts);
  }
  emit(io::to_json(rep), cfg.out, out);
  return status_code(rep.status);
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  const TruncatedSequence beta = io::sequence_from_json(io::read_file(cfg.in), cfg.in);
  const AtomicMeasure mu = io::measure_from_json(io::read_file(cfg.measure), cfg.measure);
  const double r = verify_measure(mu, beta);
  const bool ok = r <= cfg.tol.residual;
  out << std::setprecision(17) << "residual " << r << "\n"
      << "tol " << cfg.tol.residual << "\n"
      << "verdict " << (ok ? "MATCH" : "MISMATCH") << "\n";
  return ok ? kExitOk : kExitNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truncated and full K-moment problem solver"};
  app.require_subcommand(1);
  Config cfg;

  auto* synth = app.add_subcommand("synthesize", "moments of a measure");
  synth->add_option("--measure", cfg.measure, "measure JSON");
  synth->add_option("--degree", cfg.degree, "maximal total degree")->required()->check(CLI::NonNegativeNumber);
  synth->add_option("--dim", cfg.dim, "dimension of a random product-grid measure")->check(CLI::PositiveNumber);
  synth->add_option("--seed", cfg.seed, "seed for the random measure (default 0)");
  synth->add_option("--measure-out", cfg.measure_out, "write the measure used");
  synth->add_option("--out", cfg.out, "output moments JSON (default stdout)");

  auto* matrix = app.add_subcommand("matrix", "write M(n) or a localizing matrix");
  auto* psd = app.add_subcommand("psd", "minimal eigenvalue and PSD verdict");
  for (auto* cmd : {matrix, psd}) {
    cmd->add_option("--in", cfg.in, "moments JSON")->required();
    cmd->add_option("--order", cfg.order, "matrix order (default: largest available)")->check(CLI::NonNegativeNumber);
    cmd->add_option("--localize", cfg.localize, "polynomial JSON for a localizing matrix");
  }
  matrix->add_option("--out", cfg.out, "output JSON (default stdout)");
  add_tolerances(psd, cfg, false);

  auto* recurrence = app.add_subcommand("recurrence", "detect the minimal characteristic system");
  recurrence->add_option("--in", cfg.in, "moments JSON")->required();
  recurrence->add_option("--out", cfg.out, "output JSON (default stdout)");
  recurrence->add_option("--tol-fit", cfg.tol.fit, "relative residual accepting a recurrence")->check(CLI::PositiveNumber);

  auto* extend = app.add_subcommand("extend", "extend moments through the detected recurrences");
  extend->add_option("--in", cfg.in, "moments JSON")->required();
  extend->add_option("--degree", cfg.degree, "target total degree")->required()->check(CLI::NonNegativeNumber);
  extend->add_option("--out", cfg.out, "output JSON (default stdout)");
  extend->add_option("--tol-fit", cfg.tol.fit, "relative residual accepting a recurrence")->check(CLI::PositiveNumber);

  auto* solve = app.add_subcommand("solve", "recover the representing measure");
  auto* solve_k = app.add_subcommand("solve-k", "recover the measure and check a semialgebraic support");
  for (auto* cmd : {solve, solve_k}) {
    cmd->add_option("--in", cfg.in, "moments JSON")->required();
    cmd->add_option("--out", cfg.out, "report JSON (default stdout)");
    add_tolerances(cmd, cfg, true);
  }
  solve_k->add_option("--constraints", cfg.constraints, "constraints JSON")->required();

  auto* verify = app.add_subcommand("verify", "moment residual of a measure against data");
  verify->add_option("--in", cfg.in, "moments JSON")->required();
  verify->add_option("--measure", cfg.measure, "measure JSON")->required();
  verify->add_option("--tol-residual", cfg.tol.residual, "admissible residual")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitMalformed;
  }

  try {
    if (synth->parsed()) return cmd_synthesize(cfg, out);
    if (matrix->parsed()) return cmd_matrix(cfg, out);
    if (psd->parsed()) return cmd_psd(cfg, out);
    if (recurrence->parsed()) return cmd_recurrence(cfg, out, err);
    if (extend->parsed()) return cmd_extend(cfg, out, err);
    if (solve->parsed()) return cmd_solve(cfg, out, false);
    if (solve_k->parsed()) return cmd_solve(cfg, out, true);
    if (verify->parsed()) return cmd_verify(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
  return kExitMalformed;
}

}  // namespace kmoment::cli
