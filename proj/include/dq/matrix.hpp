#pragma once

// Dense square matrices over an arbitrary element type, the ΔQ semiring
// product (firstToFinish as addition, after as multiplication), and network
// reachability built on it.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dq/latency.hpp"
#include "dq/numerics.hpp"

namespace dq {

template <class T>
class SMatrix {
 public:
  using value_type = T;

  /// gen(i, j) supplies cell (i, j); indices are 0-based.
  template <class Gen>
  static SMatrix build(std::size_t n, Gen&& gen) {
    if (n == 0) throw std::invalid_argument("matrix dimension must be positive");
    std::vector<T> cells;
    cells.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cells.push_back(gen(i, j));
    return SMatrix(n, std::move(cells));
  }

  std::size_t size() const { return dim_; }

  const T& at(std::size_t i, std::size_t j) const {
    if (i >= dim_ || j >= dim_)
      throw std::out_of_range("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                              ") outside dimension " + std::to_string(dim_));
    return cells_[i * dim_ + j];
  }

  const T& operator()(std::size_t i, std::size_t j) const { return cells_[i * dim_ + j]; }

  /// Row-major cell storage.
  std::span<const T> cells() const { return cells_; }

  std::vector<std::vector<T>> rows() const {
    std::vector<std::vector<T>> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      out[i].assign(cells_.begin() + static_cast<std::ptrdiff_t>(i * dim_),
                    cells_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
    return out;
  }

  std::vector<std::vector<T>> columns() const {
    std::vector<std::vector<T>> out(dim_);
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t i = 0; i < dim_; ++i) out[j].push_back((*this)(i, j));
    return out;
  }

  friend bool operator==(const SMatrix&, const SMatrix&) = default;

 private:
  SMatrix(std::size_t n, std::vector<T> cells) : dim_(n), cells_(std::move(cells)) {}

  std::size_t dim_;
  std::vector<T> cells_;
};

template <class T>
  requires HasUnit<T> && HasNull<T>
SMatrix<T> identity_matrix(std::size_t n) {
  return SMatrix<T>::build(n, [](std::size_t i, std::size_t j) {
    return i == j ? Unit<T>::value() : Null<T>::value();
  });
}

template <HasNull T>
SMatrix<T> null_matrix(std::size_t n) {
  return SMatrix<T>::build(n, [](std::size_t, std::size_t) { return Null<T>::value(); });
}

namespace detail {
template <class T>
void require_same_dim(const SMatrix<T>& a, const SMatrix<T>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("matrix dimension mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
}
}  // namespace detail

/// out(i,j) = foldr1 add [mul(a(i,k), b(k,j)) | k <- 0..n-1]
template <class T, class Add, class Mul>
SMatrix<T> mat_mul_with(Add add, Mul mul, const SMatrix<T>& a, const SMatrix<T>& b) {
  detail::require_same_dim(a, b);
  const std::size_t n = a.size();
  return SMatrix<T>::build(n, [&](std::size_t i, std::size_t j) {
    T acc = mul(a(i, n - 1), b(n - 1, j));
    for (std::size_t k = n - 1; k-- > 0;) acc = add(mul(a(i, k), b(k, j)), acc);
    return acc;
  });
}

template <class T>
SMatrix<T> mat_add(const SMatrix<T>& a, const SMatrix<T>& b) {
  detail::require_same_dim(a, b);
  return SMatrix<T>::build(a.size(), [&](std::size_t i, std::size_t j) { return a(i, j) + b(i, j); });
}

/// Square root of the summed squared element distances.
template <HasMetric T>
double frobenius_distance(const SMatrix<T>& a, const SMatrix<T>& b) {
  detail::require_same_dim(a, b);
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      double d = Metric<T>::distance(a(i, j), b(i, j));
      total += d * d;
    }
  return std::sqrt(total);
}

template <HasMetric T>
struct Metric<SMatrix<T>> {
  static double distance(const SMatrix<T>& a, const SMatrix<T>& b) { return frobenius_distance(a, b); }
  static constexpr double similarity_threshold = Metric<T>::similarity_threshold;
};

/// Iterates `step` until two successive values are similar and returns the
/// earlier of the two. Throws ConvergenceError once `max_steps` comparisons
/// have failed.
template <HasMetric R, class Step>
R converges(int max_steps, Step&& step, R r) {
  for (; max_steps > 0; --max_steps) {
    R next = step(r);
    if (similar(r, next)) return r;
    r = std::move(next);
  }
  throw ConvergenceError();
}

using NetworkMatrix = SMatrix<LatencyDistribution>;

/// Builds a connectivity matrix: the diagonal is forced to noDelay.
template <class Gen>
NetworkMatrix connectivity_matrix(std::size_t n, Gen&& gen) {
  return NetworkMatrix::build(n, [&](std::size_t i, std::size_t j) {
    return i == j ? no_delay() : LatencyDistribution(gen(i, j));
  });
}

/// Product with firstToFinish as addition and after as multiplication.
inline NetworkMatrix dq_mat_mul(const NetworkMatrix& a, const NetworkMatrix& b) {
  return mat_mul_with(
      [](const LatencyDistribution& x, const LatencyDistribution& y) { return first_to_finish(x, y); },
      [](const LatencyDistribution& x, const LatencyDistribution& y) { return after(x, y); }, a, b);
}

/// Limit of R_n(A) = R_{n-1}(A)·A, with at most dim(A) iterations. Cell
/// (i,j) holds the ΔQ of the best path from i to j.
inline NetworkMatrix optimal_connections(const NetworkMatrix& a) {
  return converges(static_cast<int>(a.size()),
                   [&a](const NetworkMatrix& r) { return dq_mat_mul(r, a); }, a);
}

/// Every pair is reachable with nonzero probability in the limit matrix.
inline bool is_strongly_connected(const NetworkMatrix& a) {
  auto limit = optimal_connections(a);
  for (const auto& cell : limit.cells())
    if (!(ultimate_arrival(cell) > 0.0)) return false;
  return true;
}

}  // namespace dq
