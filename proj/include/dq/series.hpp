#pragma once

// Finite power series F(t) = f0 + f1 t + ... + fn t^n. Coefficient i is the
// value at delay i.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <utility>
#include <vector>

#include "dq/numerics.hpp"

namespace dq {

template <class T>
class Series {
 public:
  using value_type = T;
  using const_iterator = typename std::vector<T>::const_iterator;

  Series() = default;
  Series(std::initializer_list<T> coefficients) : coefficients_(coefficients) {}
  explicit Series(std::vector<T> coefficients) : coefficients_(std::move(coefficients)) {}

  std::size_t size() const { return coefficients_.size(); }
  bool empty() const { return coefficients_.empty(); }
  const T& operator[](std::size_t i) const { return coefficients_[i]; }
  const T& front() const { return coefficients_.front(); }
  const T& back() const { return coefficients_.back(); }
  const_iterator begin() const { return coefficients_.begin(); }
  const_iterator end() const { return coefficients_.end(); }

  const std::vector<T>& coefficients() const& { return coefficients_; }
  std::vector<T> coefficients() && { return std::move(coefficients_); }

  friend bool operator==(const Series&, const Series&) = default;

 private:
  std::vector<T> coefficients_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Series<T>& s) {
  os << '[';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  return os << ']';
}

template <class T>
  requires HasUnit<T>
struct Unit<Series<T>> {
  static Series<T> value() { return Series<T>{Unit<T>::value()}; }
};
template <class T>
  requires HasNull<T>
struct Null<Series<T>> {
  static Series<T> value() { return Series<T>{Null<T>::value()}; }
};

template <class T>
Series<T> cumsum(const Series<T>& s) {
  std::vector<T> out(s.size());
  std::partial_sum(s.begin(), s.end(), out.begin());
  return Series<T>(std::move(out));
}

/// Backward difference with the first coefficient copied; inverse of cumsum.
template <class T>
Series<T> diff_enc(const Series<T>& s) {
  std::vector<T> out(s.size());
  std::adjacent_difference(s.begin(), s.end(), out.begin());
  return Series<T>(std::move(out));
}

/// First `d` coefficients.
template <class T>
Series<T> cut(Delay d, const Series<T>& s) {
  auto n = std::min<std::size_t>(static_cast<std::size_t>(d.ticks()), s.size());
  return Series<T>(std::vector<T>(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n)));
}

template <class T>
Series<T> scalar_mult(const T& c, const Series<T>& s) {
  std::vector<T> out;
  out.reserve(s.size());
  for (const auto& x : s) out.push_back(c * x);
  return Series<T>(std::move(out));
}

/// Pointwise combination where the shorter input is treated as padded with
/// the neutral element of `op`: the tail of the longer input is copied.
template <class T, class Op>
Series<T> zip_with_expanding(Op op, const Series<T>& f, const Series<T>& g) {
  const auto& longer = f.size() >= g.size() ? f : g;
  std::size_t common = std::min(f.size(), g.size());
  std::vector<T> out;
  out.reserve(longer.size());
  for (std::size_t i = 0; i < common; ++i) out.push_back(op(f[i], g[i]));
  for (std::size_t i = common; i < longer.size(); ++i) out.push_back(longer[i]);
  return Series<T>(std::move(out));
}

/// Convolution under caller-supplied addition and multiplication. Terms of
/// each output coefficient are combined as a right fold in ascending order
/// of the left operand's index.
template <class T, class Add, class Mul>
Series<T> general_convolve(Add add, Mul mul, const Series<T>& f, const Series<T>& g) {
  if (f.empty() || g.empty()) return {};
  const std::size_t n = f.size(), m = g.size();
  std::vector<T> out;
  out.reserve(n + m - 1);
  for (std::size_t k = 0; k + 1 < n + m; ++k) {
    std::size_t lo = k >= m - 1 ? k - (m - 1) : 0;
    std::size_t hi = std::min(k, n - 1);
    T acc = mul(f[hi], g[k - hi]);
    for (std::size_t i = hi; i-- > lo;) acc = add(mul(f[i], g[k - i]), acc);
    out.push_back(std::move(acc));
  }
  return Series<T>(std::move(out));
}

template <class T>
Series<T> convolve(const Series<T>& f, const Series<T>& g) {
  if (f.empty() || g.empty()) return {};
  std::vector<T> out(f.size() + g.size() - 1, T{});
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) out[i + j] += f[i] * g[j];
  return Series<T>(std::move(out));
}

/// Missing terms are zero, so the result has the shorter length.
template <class T>
Series<T> elementwise_mult(const Series<T>& f, const Series<T>& g) {
  std::size_t n = std::min(f.size(), g.size());
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f[i] * g[i];
  return Series<T>(std::move(out));
}

template <class T>
Series<T> add_series(const Series<T>& f, const Series<T>& g) {
  return zip_with_expanding([](const T& a, const T& b) { return a + b; }, f, g);
}

template <class T>
Series<T> operator+(const Series<T>& f, const Series<T>& g) {
  return add_series(f, g);
}

template <class T>
Series<T> operator-(const Series<T>& f, const Series<T>& g) {
  std::vector<T> neg;
  neg.reserve(g.size());
  for (const auto& x : g) neg.push_back(-x);
  return add_series(f, Series<T>(std::move(neg)));
}

template <class T>
Series<T> operator*(const T& c, const Series<T>& s) {
  return scalar_mult(c, s);
}

/// Right-pads the shorter series with `pad`.
template <class T>
std::pair<Series<T>, Series<T>> extend_to_same_length(const T& pad, const Series<T>& f,
                                                      const Series<T>& g) {
  std::size_t n = std::max(f.size(), g.size());
  std::vector<T> a = f.coefficients(), b = g.coefficients();
  a.resize(n, pad);
  b.resize(n, pad);
  return {Series<T>(std::move(a)), Series<T>(std::move(b))};
}

/// Right-pads the shorter series by repeating its own last element.
template <class T>
std::pair<Series<T>, Series<T>> extend_to_same_length_last(const Series<T>& f,
                                                           const Series<T>& g) {
  if (f.empty() || g.empty())
    throw DomainError("extend_to_same_length_last needs nonempty series");
  std::size_t n = std::max(f.size(), g.size());
  std::vector<T> a = f.coefficients(), b = g.coefficients();
  a.resize(n, f.back());
  b.resize(n, g.back());
  return {Series<T>(std::move(a)), Series<T>(std::move(b))};
}

template <class T>
Series<T> drop_trailing_zeros(const Series<T>& s) {
  auto v = s.coefficients();
  while (!v.empty() && v.back() == T{}) v.pop_back();
  return Series<T>(std::move(v));
}

/// Equality modulo trailing zeros.
template <class T>
bool equivalent(const Series<T>& f, const Series<T>& g) {
  return drop_trailing_zeros(f) == drop_trailing_zeros(g);
}

/// Euclidean norm of the zero-expanded difference.
template <class T>
double series_distance(const Series<T>& f, const Series<T>& g) {
  double sum = 0.0;
  std::size_t n = std::max(f.size(), g.size());
  for (std::size_t i = 0; i < n; ++i) {
    double a = i < f.size() ? static_cast<double>(f[i]) : 0.0;
    double b = i < g.size() ? static_cast<double>(g[i]) : 0.0;
    sum += (a - b) * (a - b);
  }
  return std::sqrt(sum);
}

template <class T>
  requires std::is_arithmetic_v<T>
struct Metric<Series<T>> {
  static double distance(const Series<T>& a, const Series<T>& b) { return series_distance(a, b); }
  static constexpr double similarity_threshold = 0.001;
};

/// Elementwise 1 - x; every element must be a probability.
inline Series<double> complement(const Series<double>& s) {
  std::vector<double> out;
  out.reserve(s.size());
  for (double x : s) out.push_back(complement(x));
  return Series<double>(std::move(out));
}

template <class T>
double sum(const Series<T>& s) {
  double total = 0.0;
  for (const auto& x : s) total += static_cast<double>(x);
  return total;
}

}  // namespace dq
