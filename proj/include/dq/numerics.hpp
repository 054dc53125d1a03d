#pragma once

// Scalar domains shared by the whole library: delays, probabilities, the
// error hierarchy, and the unit/null/metric capability traits.

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

#ifndef DQ_MAX_HORIZON
#define DQ_MAX_HORIZON 65536
#endif

namespace dq {

// Largest representable delay. Arithmetic past it raises HorizonError
// instead of truncating.
inline constexpr std::int64_t kMaxHorizon = DQ_MAX_HORIZON;

// Slack for checks on exact arithmetic paths.
inline constexpr double kIdealizedTolerance = 1e-9;
// Slack for validating floating-point probabilities.
inline constexpr double kApproximateTolerance = 1e-6;
// Magnitudes below this are rounding residue and snap to zero during
// canonicalization.
inline constexpr double kNoiseFloor = 1e-14;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Mutually exclusive events whose probabilities sum past one.
class ExclusivityError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class HorizonError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError() : std::runtime_error("Solution did not converge") {}
};

/// Discrete delay measured in ticks. `Delay{}` is the distinguished start.
class Delay {
 public:
  constexpr Delay() = default;
  constexpr explicit Delay(std::int64_t ticks) : ticks_(ticks) {
    if (ticks < 0) throw DomainError("negative delay");
    if (ticks > kMaxHorizon)
      throw HorizonError("delay " + std::to_string(ticks) + " exceeds horizon " +
                         std::to_string(kMaxHorizon));
  }

  constexpr std::int64_t ticks() const { return ticks_; }

  friend constexpr auto operator<=>(Delay, Delay) = default;
  friend constexpr Delay operator+(Delay a, Delay b) { return Delay(a.ticks_ + b.ticks_); }

 private:
  std::int64_t ticks_ = 0;
};

inline constexpr Delay start{};

struct IdealizedFlavor {
  static constexpr double tolerance = kIdealizedTolerance;
};
struct ApproximateFlavor {
  static constexpr double tolerance = kApproximateTolerance;
};

/// Probability in [0, 1]; the flavor fixes how far past one a value may
/// drift before it is rejected.
template <class Flavor>
class BasicProbability {
 public:
  static constexpr double tolerance = Flavor::tolerance;

  constexpr BasicProbability() = default;
  constexpr explicit BasicProbability(double value) : value_(value) {
    if (!(value >= 0.0) || value > 1.0 + tolerance)
      throw DomainError("probability out of range: " + std::to_string(value));
  }

  constexpr double value() const { return value_; }

  friend constexpr auto operator<=>(BasicProbability, BasicProbability) = default;

 private:
  double value_ = 0.0;
};

using IdealizedProbability = BasicProbability<IdealizedFlavor>;
using ApproximateProbability = BasicProbability<ApproximateFlavor>;
using Probability = ApproximateProbability;

template <class F>
constexpr BasicProbability<F> complement(BasicProbability<F> p) {
  // Values in (1, 1 + tol] map to a tiny negative; clamp to keep the result valid.
  double c = 1.0 - p.value();
  return BasicProbability<F>(c < 0.0 ? 0.0 : c);
}

inline double complement(double p) {
  if (!(p >= 0.0) || p > 1.0 + kApproximateTolerance)
    throw DomainError("complement of value outside [0,1]: " + std::to_string(p));
  return 1.0 - p;
}

/// Sum of two mutually exclusive events.
template <class F>
constexpr BasicProbability<F> ex_add(BasicProbability<F> p, BasicProbability<F> q) {
  double sum = p.value() + q.value();
  if (sum > 1.0 + BasicProbability<F>::tolerance)
    throw ExclusivityError("exclusive sum exceeds one: " + std::to_string(sum));
  return BasicProbability<F>(sum);
}

// Unit and null of multiplication, per element type.
template <class T>
struct Unit;
template <class T>
struct Null;

template <class T>
  requires std::is_arithmetic_v<T>
struct Unit<T> {
  static constexpr T value() { return T{1}; }
};
template <class T>
  requires std::is_arithmetic_v<T>
struct Null<T> {
  static constexpr T value() { return T{0}; }
};

template <class F>
struct Unit<BasicProbability<F>> {
  static constexpr BasicProbability<F> value() { return BasicProbability<F>(1.0); }
};
template <class F>
struct Null<BasicProbability<F>> {
  static constexpr BasicProbability<F> value() { return BasicProbability<F>(0.0); }
};

template <class T>
concept HasUnit = requires {
  { Unit<T>::value() } -> std::convertible_to<T>;
};
template <class T>
concept HasNull = requires {
  { Null<T>::value() } -> std::convertible_to<T>;
};

template <HasUnit T>
T unit_of() {
  return Unit<T>::value();
}
template <HasNull T>
T null_of() {
  return Null<T>::value();
}

// Distance between two values plus the threshold below which they count as
// the same (`a ~~ b`).
template <class T>
struct Metric;

template <class T>
  requires std::is_arithmetic_v<T>
struct Metric<T> {
  static double distance(T a, T b) {
    return std::abs(static_cast<double>(a) - static_cast<double>(b));
  }
  static constexpr double similarity_threshold = 0.001;
};

template <class F>
struct Metric<BasicProbability<F>> {
  static double distance(BasicProbability<F> a, BasicProbability<F> b) {
    return std::abs(a.value() - b.value());
  }
  static constexpr double similarity_threshold = 0.001;
};

template <class T>
concept HasMetric = requires(const T& a, const T& b) {
  { Metric<T>::distance(a, b) } -> std::convertible_to<double>;
  { Metric<T>::similarity_threshold } -> std::convertible_to<double>;
};

template <HasMetric T>
double distance(const T& a, const T& b) {
  return Metric<T>::distance(a, b);
}

/// `a ~~ b`
template <HasMetric T>
bool similar(const T& a, const T& b) {
  return Metric<T>::distance(a, b) < Metric<T>::similarity_threshold;
}

}  // namespace dq
