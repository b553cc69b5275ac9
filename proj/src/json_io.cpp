#include "kmoment/json_io.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "kmoment/error.hpp"

namespace kmoment::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::MalformedInput, where + ": " + what);
}

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(name);
  if (it == j.end()) fail(where, std::string("missing field '") + name + "'");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

long integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long>();
}

std::size_t dimension(const json& j, const std::string& where) {
  const long d = integer(field(j, "dim", where), where + ".dim");
  if (d < 1) fail(where + ".dim", "dimension must be >= 1");
  return static_cast<std::size_t>(d);
}

MultiIndex index_from_json(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of exponents");
  if (j.size() != dim) {
    fail(where, "has " + std::to_string(j.size()) + " entries, expected " + std::to_string(dim));
  }
  std::vector<int> e;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const long v = integer(j[k], where + "[" + std::to_string(k) + "]");
    if (v < 0) fail(where + "[" + std::to_string(k) + "]", "exponent must be >= 0");
    e.push_back(static_cast<int>(v));
  }
  return MultiIndex(std::move(e));
}

json index_to_json(const MultiIndex& idx) {
  json a = json::array();
  for (int e : idx.exponents()) a.push_back(e);
  return a;
}

json diagnostics_to_json(const MatrixDiagnostics& d, const Tolerances& tol) {
  return {{"order", d.order},
          {"min_eigenvalue", d.min_eigenvalue},
          {"is_psd", d.is_psd},
          {"tol_psd", tol.psd},
          {"rank", d.rank},
          {"spectral_norm", d.spectral_norm},
          {"tol_rank", tol.rank}};
}

json tolerances_to_json(const Tolerances& t) {
  return {{"rank", t.rank},         {"psd", t.psd},           {"imag", t.imag},
          {"weight", t.weight},     {"residual", t.residual}, {"fit", t.fit},
          {"consistency", t.consistency}, {"support", t.support}};
}

}  // namespace

json to_json(const UnivariatePoly& p) { return {{"coeffs", p.coeffs()}}; }

json to_json(const MultivariatePoly& p) {
  json terms = json::array();
  for (const auto& [idx, c] : p.terms()) terms.push_back({{"idx", index_to_json(idx)}, {"coef", c}});
  return {{"dim", p.dim()}, {"terms", terms}};
}

json to_json(const TruncatedSequence& beta) {
  json moments = json::array();
  const auto basis = enumerate_basis(beta.dim(), beta.max_degree());
  for (std::size_t r = 0; r < basis.size(); ++r) {
    moments.push_back({{"idx", index_to_json(basis[r])}, {"value", beta.at_rank(r)}});
  }
  return {{"dim", beta.dim()}, {"degree", beta.max_degree()}, {"moments", moments}};
}

json to_json(const CharacteristicSystem& sys) {
  json polys = json::array();
  for (const auto& p : sys.polys) polys.push_back(to_json(p));
  return {{"polys", polys}, {"tau", sys.tau()}, {"residual", sys.residual}};
}

json to_json(const AtomicMeasure& mu, bool with_grid_index) {
  json atoms = json::array();
  for (const Atom& a : mu.atoms) {
    json ja = {{"point", a.point}, {"weight", a.weight}};
    if (with_grid_index && !a.grid_index.empty()) ja["grid_index"] = a.grid_index;
    atoms.push_back(std::move(ja));
  }
  return {{"dim", mu.dim}, {"atoms", atoms}};
}

json to_json(const MomentMatrix& m) {
  json labels = json::array();
  for (const auto& l : m.labels) labels.push_back(index_to_json(l));
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.entries.cols(); ++j) row.push_back(m.entries(i, j));
    rows.push_back(std::move(row));
  }
  json out = {{"order", m.order},
              {"kind", m.kind == MatrixKind::Plain ? "plain" : "localizing"},
              {"labels", labels},
              {"entries", rows}};
  if (m.localizer) out["localizer"] = to_json(*m.localizer);
  return out;
}

json to_json(const SemialgebraicSet& k, std::size_t dim) {
  json cs = json::array();
  for (const auto& q : k.constraints) cs.push_back(to_json(q));
  return {{"dim", dim}, {"constraints", cs}};
}

json to_json(const SolveReport& r) {
  json out;
  out["status"] = std::string(to_string(r.status));
  out["diagnostic"] = r.diagnostic;
  out["tolerances"] = tolerances_to_json(r.tolerances);
  out["input_degree"] = r.input_degree;
  out["extended_degree"] = r.extended_degree;
  out["tau"] = r.tau;
  out["system"] = r.system ? to_json(*r.system) : json(nullptr);
  json psd = json::array();
  for (const auto& d : r.psd_results) psd.push_back(diagnostics_to_json(d, r.tolerances));
  out["psd_results"] = psd;
  out["binet_residual"] = r.binet_residual;
  out["expansion_error"] = r.expansion_error ? json(std::string(to_string(*r.expansion_error))) : json(nullptr);
  out["offending_grid_index"] = r.offending_grid_index;
  out["offending_variable"] = r.offending_variable ? json(*r.offending_variable) : json(nullptr);
  out["measure"] = r.measure ? to_json(*r.measure, true) : json(nullptr);
  out["atom_count"] = r.measure ? json(r.measure->atoms.size()) : json(nullptr);
  out["moment_residual"] = {{"value", r.moment_residual}, {"tol", r.tolerances.residual}};
  json cs = json::array();
  for (const auto& c : r.constraints) {
    cs.push_back({{"q", to_json(c.q)},
                  {"localizing", diagnostics_to_json(c.localizing, r.tolerances)},
                  {"rank_reference_scale", r.psd_results.empty() ? 0.0 : r.psd_results.back().spectral_norm},
                  {"atoms_in_zero_set", c.atoms_in_zero_set},
                  {"min_value", c.min_value},
                  {"tol_support", r.tolerances.support},
                  {"atom_count_law", c.atom_count_law},
                  {"satisfied", c.satisfied}});
  }
  out["constraints"] = cs;
  out["violated_constraint"] = r.violated_constraint ? json(*r.violated_constraint) : json(nullptr);
  out["violating_atom"] = r.violating_atom ? json(*r.violating_atom) : json(nullptr);
  return out;
}

UnivariatePoly univariate_from_json(const json& j, const std::string& where) {
  const json& c = field(j, "coeffs", where);
  if (!c.is_array()) fail(where + ".coeffs", "expected an array");
  std::vector<double> coeffs;
  for (std::size_t k = 0; k < c.size(); ++k) coeffs.push_back(number(c[k], where + ".coeffs[" + std::to_string(k) + "]"));
  return UnivariatePoly(std::move(coeffs));
}

MultivariatePoly multivariate_from_json(const json& j, const std::string& where) {
  const std::size_t d = dimension(j, where);
  const json& terms = field(j, "terms", where);
  if (!terms.is_array()) fail(where + ".terms", "expected an array");
  MultivariatePoly p(d);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string w = where + ".terms[" + std::to_string(k) + "]";
    p.add_term(index_from_json(field(terms[k], "idx", w), d, w + ".idx"), number(field(terms[k], "coef", w), w + ".coef"));
  }
  return p;
}

TruncatedSequence sequence_from_json(const json& j, const std::string& where) {
  const std::size_t d = dimension(j, where);
  const long deg = integer(field(j, "degree", where), where + ".degree");
  if (deg < 0) fail(where + ".degree", "degree must be >= 0");
  const json& ms = field(j, "moments", where);
  if (!ms.is_array()) fail(where + ".moments", "expected an array");
  const std::size_t n = basis_size(d, static_cast<int>(deg));
  std::vector<double> values(n, 0.0);
  std::vector<bool> seen(n, false);
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const std::string w = where + ".moments[" + std::to_string(k) + "]";
    const MultiIndex idx = index_from_json(field(ms[k], "idx", w), d, w + ".idx");
    if (idx.degree() > deg) fail(w + ".idx", "total degree exceeds the declared degree " + std::to_string(deg));
    const std::size_t r = degree_lex_rank(idx, d);
    if (seen[r]) fail(w + ".idx", "duplicate index");
    seen[r] = true;
    values[r] = number(field(ms[k], "value", w), w + ".value");
  }
  const auto basis = enumerate_basis(d, static_cast<int>(deg));
  for (std::size_t r = 0; r < n; ++r) {
    if (!seen[r]) {
      std::ostringstream s;
      s << "missing moment for index [";
      for (std::size_t l = 0; l < d; ++l) s << (l ? "," : "") << basis[r][l];
      s << "]";
      fail(where + ".moments", s.str());
    }
  }
  return TruncatedSequence(d, static_cast<int>(deg), std::move(values));
}

CharacteristicSystem system_from_json(const json& j, const std::string& where) {
  const json& ps = field(j, "polys", where);
  if (!ps.is_array() || ps.empty()) fail(where + ".polys", "expected a non-empty array");
  CharacteristicSystem sys;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const std::string w = where + ".polys[" + std::to_string(k) + "]";
    UnivariatePoly p = univariate_from_json(ps[k], w);
    if (p.degree() < 1) fail(w, "characteristic polynomial must have degree >= 1");
    sys.polys.push_back(p.monic());
  }
  if (j.contains("residual")) sys.residual = number(j["residual"], where + ".residual");
  return sys;
}

AtomicMeasure measure_from_json(const json& j, const std::string& where) {
  AtomicMeasure mu;
  mu.dim = dimension(j, where);
  const json& atoms = field(j, "atoms", where);
  if (!atoms.is_array()) fail(where + ".atoms", "expected an array");
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const std::string w = where + ".atoms[" + std::to_string(k) + "]";
    const json& pt = field(atoms[k], "point", w);
    if (!pt.is_array() || pt.size() != mu.dim) {
      fail(w + ".point", "expected " + std::to_string(mu.dim) + " coordinates");
    }
    Atom a;
    for (std::size_t l = 0; l < pt.size(); ++l) a.point.push_back(number(pt[l], w + ".point[" + std::to_string(l) + "]"));
    a.weight = number(field(atoms[k], "weight", w), w + ".weight");
    mu.atoms.push_back(std::move(a));
  }
  return mu;
}

SemialgebraicSet constraints_from_json(const json& j, const std::string& where) {
  const json* list = &j;
  std::string w = where;
  if (j.is_object()) {
    list = &field(j, "constraints", where);
    w += ".constraints";
  }
  if (!list->is_array()) fail(w, "expected an array of polynomials");
  SemialgebraicSet k;
  for (std::size_t i = 0; i < list->size(); ++i) {
    k.constraints.push_back(multivariate_from_json((*list)[i], w + "[" + std::to_string(i) + "]"));
  }
  if (j.is_object() && j.contains("dim")) {
    const std::size_t d = dimension(j, where);
    for (std::size_t i = 0; i < k.constraints.size(); ++i) {
      if (k.constraints[i].dim() != d) fail(w + "[" + std::to_string(i) + "].dim", "differs from the set dimension");
    }
  }
  return k;
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, path.string() + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::MalformedInput, path.string() + ": cannot open file for writing");
  out << dump(j);
}

}  // namespace kmoment::io
