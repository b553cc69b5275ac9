#ifndef KMOMENT_JSON_IO_HPP
#define KMOMENT_JSON_IO_HPP

#include <filesystem>
#include <string>

#include "json.hpp"

#include "kmoment/binet.hpp"
#include "kmoment/moments.hpp"
#include "kmoment/polynomial.hpp"
#include "kmoment/recurrence.hpp"
#include "kmoment/solver.hpp"

// JSON schemas:
//   multivariate  {"dim": d, "terms": [{"idx": [i_1, ..., i_d], "coef": c}, ...]}
//   univariate    {"coeffs": [c_0, ..., c_m]}            lowest degree first
//   moments       {"dim": d, "degree": D, "moments": [{"idx": [...], "value": v}, ...]}
//   system        {"polys": [{"coeffs": [...]}, ...], "tau": t, "residual": r}
//   measure       {"dim": d, "atoms": [{"point": [...], "weight": w}, ...]}
//   constraints   {"dim": d, "constraints": [multivariate, ...]}  (or a bare array)
// Writers always emit multi-indices in degree-lex order. Readers name the
// offending field in every MalformedInput error; `where` prefixes the message.

namespace kmoment::io {

using nlohmann::json;

json to_json(const UnivariatePoly& p);
json to_json(const MultivariatePoly& p);
json to_json(const TruncatedSequence& beta);
json to_json(const CharacteristicSystem& sys);
json to_json(const AtomicMeasure& mu, bool with_grid_index = false);
json to_json(const MomentMatrix& m);
json to_json(const SemialgebraicSet& k, std::size_t dim);
json to_json(const SolveReport& report);

UnivariatePoly univariate_from_json(const json& j, const std::string& where = "univariate");
MultivariatePoly multivariate_from_json(const json& j, const std::string& where = "polynomial");
/// Rejects missing, duplicate, and out-of-range indices.
TruncatedSequence sequence_from_json(const json& j, const std::string& where = "moments");
CharacteristicSystem system_from_json(const json& j, const std::string& where = "system");
AtomicMeasure measure_from_json(const json& j, const std::string& where = "measure");
SemialgebraicSet constraints_from_json(const json& j, const std::string& where = "constraints");

json read_file(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
std::string dump(const json& j);
void write_file(const std::filesystem::path& path, const json& j);

}  // namespace kmoment::io

#endif  // KMOMENT_JSON_IO_HPP
