#include "kmoment/multi_index.hpp"

#include <numeric>
#include <string>

#include "kmoment/error.hpp"

namespace kmoment {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::NoRecurrence: return "NoRecurrence";
    case ErrorKind::InconsistentRecurrence: return "InconsistentRecurrence";
    case ErrorKind::InsufficientInitialData: return "InsufficientInitialData";
    case ErrorKind::RepeatedRoots: return "RepeatedRoots";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::ComplexAtom: return "ComplexAtom";
    case ErrorKind::GridIndexOutOfRange: return "GridIndexOutOfRange";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

MultiIndex::MultiIndex(std::initializer_list<int> exps) : exps_(exps) {
  for (int e : exps_) {
    if (e < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent in multi-index");
  }
}

MultiIndex::MultiIndex(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) {
    if (e < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent in multi-index");
  }
}

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t var, int power) {
  if (var >= dim) throw Error(ErrorKind::DimensionMismatch, "unit index variable out of range");
  MultiIndex idx(dim);
  idx.exps_[var] = power;
  return idx;
}

int MultiIndex::degree() const noexcept {
  return std::accumulate(exps_.begin(), exps_.end(), 0);
}

MultiIndex& MultiIndex::operator+=(const MultiIndex& other) {
  if (other.dim() != dim()) {
    throw Error(ErrorKind::DimensionMismatch, "adding multi-indices of different dimension");
  }
  for (std::size_t k = 0; k < exps_.size(); ++k) exps_[k] += other.exps_[k];
  return *this;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t result = 1;
  for (std::size_t j = 1; j <= k; ++j) {
    result = result * (n - k + j) / j;
  }
  return result;
}

std::size_t basis_size(std::size_t dim, int max_degree) {
  if (max_degree < 0) return 0;
  return binomial(static_cast<std::size_t>(max_degree) + dim, dim);
}

std::size_t degree_lex_rank(const MultiIndex& idx, std::size_t dim) {
  if (idx.dim() != dim || dim == 0) {
    throw Error(ErrorKind::DimensionMismatch,
                "multi-index has " + std::to_string(idx.dim()) +
                    " entries, expected " + std::to_string(dim));
  }
  const int total = idx.degree();
  std::size_t rank = basis_size(dim, total - 1);
  // Within the degree block, count the indices that agree on the leading
  // coordinates and are larger in the next one.
  int remaining = total;
  for (std::size_t p = 0; p + 1 < dim; ++p) {
    const std::size_t tail = dim - p - 1;
    for (int larger = idx[p] + 1; larger <= remaining; ++larger) {
      rank += binomial(static_cast<std::size_t>(remaining - larger) + tail - 1, tail - 1);
    }
    remaining -= idx[p];
  }
  return rank;
}

namespace {

void fill_block(std::vector<int>& prefix, std::size_t dim, int remaining,
                std::vector<MultiIndex>& out) {
  if (prefix.size() + 1 == dim) {
    prefix.push_back(remaining);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    prefix.push_back(e);
    fill_block(prefix, dim, remaining - e, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_basis(std::size_t dim, int max_degree) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  std::vector<MultiIndex> out;
  out.reserve(basis_size(dim, max_degree));
  std::vector<int> prefix;
  for (int k = 0; k <= max_degree; ++k) fill_block(prefix, dim, k, out);
  return out;
}

bool DegreeLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  // Same block: larger leading exponent comes first.
  const std::size_t n = std::min(a.dim(), b.dim());
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k] != b[k]) return a[k] > b[k];
  }
  return a.dim() < b.dim();
}

}  // namespace kmoment
