#ifndef KMOMENT_MULTI_INDEX_HPP
#define KMOMENT_MULTI_INDEX_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace kmoment {

/// Exponent tuple (i_1, ..., i_d) indexing moments and monomials.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dim) : exps_(dim, 0) {}
  MultiIndex(std::initializer_list<int> exps);
  explicit MultiIndex(std::vector<int> exps);

  /// The unit index with 1 in position `var` and 0 elsewhere.
  static MultiIndex unit(std::size_t dim, std::size_t var, int power = 1);

  std::size_t dim() const noexcept { return exps_.size(); }
  int degree() const noexcept;

  int operator[](std::size_t k) const { return exps_[k]; }
  int& operator[](std::size_t k) { return exps_[k]; }
  std::span<const int> exponents() const noexcept { return exps_; }

  MultiIndex& operator+=(const MultiIndex& other);
  friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) {
    a += b;
    return a;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> exps_;
};

/// Binomial coefficient C(n, k); 0 when k > n.
std::size_t binomial(std::size_t n, std::size_t k);

/// Number of monomials of total degree <= n in d variables, C(n+d, d).
std::size_t basis_size(std::size_t dim, int max_degree);

/// 0-based position of `idx` in the graded ordering: total degree ascending,
/// then descending exponent of x_1, then of x_2, and so on. For d = 2 this
/// lists 1, X1, X2, X1^2, X1X2, X2^2, ...
std::size_t degree_lex_rank(const MultiIndex& idx, std::size_t dim);

/// All indices with |i| <= n, in degree-lex order.
std::vector<MultiIndex> enumerate_basis(std::size_t dim, int max_degree);

/// Orders multi-indices by degree_lex_rank; usable as a map comparator.
struct DegreeLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

}  // namespace kmoment

#endif  // KMOMENT_MULTI_INDEX_HPP
