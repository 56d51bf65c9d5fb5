#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dcnewton {

/// Exponent vector alpha = (alpha_1, ..., alpha_m), all entries >= 0.
using MultiIndex = std::vector<int>;

/// Strict lexicographic order comparing the LAST entry first, so that
/// (5,3,1) < (1,0,3) < (1,1,3). The first coordinate varies fastest.
bool lex_less(std::span<const int> a, std::span<const int> b);

/// The l_p degree selector: p in {1, 2, inf} use exact integer arithmetic,
/// any other positive p goes through a floating-point path.
class LpDegree {
 public:
  enum class Kind { one, two, infinity, real };

  static LpDegree one() { return LpDegree(Kind::one, 1.0); }
  static LpDegree two() { return LpDegree(Kind::two, 2.0); }
  static LpDegree infinity() { return LpDegree(Kind::infinity, 0.0); }
  /// Maps 1 and 2 onto the exact paths; rejects p <= 0 and non-finite p.
  static LpDegree real(double p);
  /// Accepts "1", "2", "inf" or a decimal literal.
  static LpDegree parse(const std::string& text);

  Kind kind() const { return kind_; }
  double value() const { return value_; }
  std::string to_string() const;

  bool operator==(const LpDegree&) const = default;

 private:
  LpDegree(Kind kind, double value) : kind_(kind), value_(value) {}
  Kind kind_;
  double value_;
};

/// Provenance of a set generated as A_{m,n,p}.
struct LpProvenance {
  std::size_t dim;
  int degree;
  LpDegree p;
};

/// A lexicographically sorted, duplicate-free, downward-closed set of
/// multi-indices. Indices are stored flat (size() * dim() ints); position k
/// in this order is the canonical storage slot of every coefficient vector
/// built on the set.
class MultiIndexSet {
 public:
  /// Sorts and de-duplicates; throws std::invalid_argument unless the result
  /// is non-empty and downward closed and every index has length dim.
  static MultiIndexSet from_indices(std::size_t dim, std::vector<MultiIndex> indices);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  std::span<const int> operator[](std::size_t k) const {
    return {entries_.data() + k * dim_, dim_};
  }
  int exponent(std::size_t k, std::size_t i) const { return entries_[k * dim_ + i]; }
  std::span<const int> flat() const { return entries_; }

  /// Position of alpha in canonical order, if present.
  std::optional<std::size_t> find(std::span<const int> alpha) const;
  bool contains(std::span<const int> alpha) const { return find(alpha).has_value(); }

  const std::optional<LpProvenance>& provenance() const { return provenance_; }

 private:
  friend MultiIndexSet make_lp_set(std::size_t m, int n, LpDegree p);
  MultiIndexSet(std::size_t dim, std::vector<int> entries);

  std::size_t dim_ = 0;
  std::size_t size_ = 0;
  std::vector<int> entries_;
  std::optional<LpProvenance> provenance_;
};

/// A_{m,n,p} = { alpha in N^m : ||alpha||_p <= n }.
MultiIndexSet make_lp_set(std::size_t m, int n, LpDegree p);

/// True iff every componentwise-smaller index of each member is a member.
/// Works on arbitrary collections (unsorted, possibly not closed).
bool is_downward_closed(std::size_t dim, const std::vector<MultiIndex>& indices);
bool is_downward_closed(const MultiIndexSet& set);

/// beta with beta_h = alpha_h for h != i and beta_i = j. The dimension i is
/// zero-based here; requires 0 <= j < alpha_i.
MultiIndex back_neighbor(std::span<const int> alpha, std::size_t i, int j);

/// max over the set of alpha_i (zero-based i).
int max_exponent(const MultiIndexSet& set, std::size_t i);

/// CSV with header a1..am, one row per index in canonical order.
std::string to_csv(const MultiIndexSet& set);

}  // namespace dcnewton
