#ifndef KMOMENT_ERROR_HPP
#define KMOMENT_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kmoment {

enum class ErrorKind {
  DimensionMismatch,
  InvalidArgument,
  InsufficientData,
  ZeroPolynomial,
  NoRecurrence,
  InconsistentRecurrence,
  InsufficientInitialData,
  RepeatedRoots,
  NegativeWeight,
  ComplexAtom,
  GridIndexOutOfRange,
  MalformedInput,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library. Recoverable outcomes of the solver
// pipeline are turned into a SolveReport status instead of propagating.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // 0-based variable the failure refers to, when there is one.
  const std::optional<std::size_t>& variable() const noexcept {
    return variable_;
  }
  // Grid multi-index of the offending Binet term (NegativeWeight, ComplexAtom).
  const std::vector<std::size_t>& grid_index() const noexcept {
    return grid_index_;
  }

  Error& with_variable(std::size_t v) {
    variable_ = v;
    return *this;
  }
  Error& with_grid_index(std::vector<std::size_t> g) {
    grid_index_ = std::move(g);
    return *this;
  }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> variable_;
  std::vector<std::size_t> grid_index_;
};

}  // namespace kmoment

#endif  // KMOMENT_ERROR_HPP
