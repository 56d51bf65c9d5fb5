#include "dcnewton/multi_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dcnewton {

bool lex_less(std::span<const int> a, std::span<const int> b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

LpDegree LpDegree::real(double p) {
  if (!std::isfinite(p) || p <= 0.0) {
    throw std::invalid_argument("l_p degree requires finite p > 0");
  }
  if (p == 1.0) return one();
  if (p == 2.0) return two();
  return LpDegree(Kind::real, p);
}

LpDegree LpDegree::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse l_p degree '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("cannot parse l_p degree '" + text + "'");
  if (std::isinf(p) && p > 0) return infinity();
  return real(p);
}

std::string LpDegree::to_string() const {
  switch (kind_) {
    case Kind::one: return "1";
    case Kind::two: return "2";
    case Kind::infinity: return "inf";
    case Kind::real: {
      std::ostringstream os;
      os.precision(17);
      os << value_;
      return os.str();
    }
  }
  return "?";
}

MultiIndexSet::MultiIndexSet(std::size_t dim, std::vector<int> entries)
    : dim_(dim), size_(dim == 0 ? 0 : entries.size() / dim), entries_(std::move(entries)) {}

MultiIndexSet MultiIndexSet::from_indices(std::size_t dim, std::vector<MultiIndex> indices) {
  if (dim == 0) throw std::invalid_argument("multi-index dimension must be >= 1");
  if (indices.empty()) throw std::invalid_argument("multi-index set must be non-empty");
  for (const auto& a : indices) {
    if (a.size() != dim) throw std::invalid_argument("multi-index length differs from set dimension");
    for (int v : a) {
      if (v < 0) throw std::invalid_argument("multi-index entries must be non-negative");
    }
  }
  std::sort(indices.begin(), indices.end(),
            [](const MultiIndex& a, const MultiIndex& b) { return lex_less(a, b); });
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (!is_downward_closed(dim, indices)) {
    throw std::invalid_argument("multi-index set is not downward closed");
  }
  std::vector<int> flat;
  flat.reserve(indices.size() * dim);
  for (const auto& a : indices) flat.insert(flat.end(), a.begin(), a.end());
  return MultiIndexSet(dim, std::move(flat));
}

std::optional<std::size_t> MultiIndexSet::find(std::span<const int> alpha) const {
  if (alpha.size() != dim_) return std::nullopt;
  std::size_t lo = 0, hi = size_;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (lex_less((*this)[mid], alpha)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size_ && std::equal(alpha.begin(), alpha.end(), (*this)[lo].begin())) return lo;
  return std::nullopt;
}

namespace {

// Emits indices with the last coordinate outermost, which is canonical order.
class LpEnumerator {
 public:
  LpEnumerator(std::size_t m, int n, LpDegree p) : m_(m), n_(n), p_(p), current_(m, 0) {
    if (p_.kind() == LpDegree::Kind::real) {
      budget_real_ = std::pow(static_cast<double>(n), p_.value()) + 1e-10;
    }
  }

  std::vector<int> run() {
    recurse(m_, 0, 0.0);
    return std::move(out_);
  }

 private:
  bool admits(long long used_int, double used_real, int v) const {
    switch (p_.kind()) {
      case LpDegree::Kind::one: return used_int + v <= n_;
      case LpDegree::Kind::two:
        return used_int + static_cast<long long>(v) * v <= static_cast<long long>(n_) * n_;
      case LpDegree::Kind::infinity: return v <= n_;
      case LpDegree::Kind::real:
        return used_real + std::pow(static_cast<double>(v), p_.value()) <= budget_real_;
    }
    return false;
  }

  long long spend(int v) const {
    switch (p_.kind()) {
      case LpDegree::Kind::one: return v;
      case LpDegree::Kind::two: return static_cast<long long>(v) * v;
      default: return 0;
    }
  }

  // d counts remaining coordinates; coordinate d-1 is fixed at this level.
  void recurse(std::size_t d, long long used_int, double used_real) {
    if (d == 0) {
      out_.insert(out_.end(), current_.begin(), current_.end());
      return;
    }
    for (int v = 0; admits(used_int, used_real, v); ++v) {
      current_[d - 1] = v;
      const double add =
          p_.kind() == LpDegree::Kind::real ? std::pow(static_cast<double>(v), p_.value()) : 0.0;
      recurse(d - 1, used_int + spend(v), used_real + add);
    }
    current_[d - 1] = 0;
  }

  std::size_t m_;
  int n_;
  LpDegree p_;
  double budget_real_ = 0.0;
  std::vector<int> current_;
  std::vector<int> out_;
};

}  // namespace

MultiIndexSet make_lp_set(std::size_t m, int n, LpDegree p) {
  if (m == 0) throw std::invalid_argument("dimension m must be >= 1");
  if (n < 0) throw std::invalid_argument("degree n must be >= 0");
  MultiIndexSet set(m, LpEnumerator(m, n, p).run());
  set.provenance_ = LpProvenance{m, n, p};
  return set;
}

bool is_downward_closed(std::size_t dim, const std::vector<MultiIndex>& indices) {
  std::vector<MultiIndex> sorted = indices;
  auto less = [](const MultiIndex& a, const MultiIndex& b) { return lex_less(a, b); };
  std::sort(sorted.begin(), sorted.end(), less);
  MultiIndex probe(dim);
  for (const auto& a : sorted) {
    if (a.size() != dim) return false;
    // Closure under single unit decrements implies closure under all decreases.
    for (std::size_t i = 0; i < dim; ++i) {
      if (a[i] < 0) return false;
      if (a[i] == 0) continue;
      probe = a;
      --probe[i];
      if (!std::binary_search(sorted.begin(), sorted.end(), probe, less)) return false;
    }
  }
  return true;
}

bool is_downward_closed(const MultiIndexSet& set) {
  std::vector<int> probe(set.dim());
  for (std::size_t k = 0; k < set.size(); ++k) {
    const auto a = set[k];
    for (std::size_t i = 0; i < set.dim(); ++i) {
      if (a[i] == 0) continue;
      std::copy(a.begin(), a.end(), probe.begin());
      --probe[i];
      if (!set.contains(probe)) return false;
    }
  }
  return true;
}

MultiIndex back_neighbor(std::span<const int> alpha, std::size_t i, int j) {
  if (i >= alpha.size()) throw std::invalid_argument("back_neighbor: dimension out of range");
  if (j < 0 || j >= alpha[i]) throw std::invalid_argument("back_neighbor: requires 0 <= j < alpha_i");
  MultiIndex beta(alpha.begin(), alpha.end());
  beta[i] = j;
  return beta;
}

int max_exponent(const MultiIndexSet& set, std::size_t i) {
  if (set.empty()) throw std::invalid_argument("max_exponent of an empty set");
  if (i >= set.dim()) throw std::invalid_argument("max_exponent: dimension out of range");
  int best = 0;
  for (std::size_t k = 0; k < set.size(); ++k) best = std::max(best, set.exponent(k, i));
  return best;
}

std::string to_csv(const MultiIndexSet& set) {
  std::ostringstream os;
  for (std::size_t i = 0; i < set.dim(); ++i) os << (i ? "," : "") << 'a' << (i + 1);
  os << '\n';
  for (std::size_t k = 0; k < set.size(); ++k) {
    for (std::size_t i = 0; i < set.dim(); ++i) os << (i ? "," : "") << set.exponent(k, i);
    os << '\n';
  }
  return os.str();
}

}  // namespace dcnewton
