#pragma once

// Earliest/Latest bounds on a distribution. Both are optional delays where
// Never (certain loss) is greater than every finite delay, and both are
// closed under the completion-time operators, so an expression can be
// bounded without building the full distributions.

#include <compare>
#include <optional>
#include <ostream>
#include <string>

#include "dq/completion.hpp"
#include "dq/latency.hpp"
#include "dq/numerics.hpp"

namespace dq {

class SometimeOrNever {
 public:
  /// Never
  constexpr SometimeOrNever() = default;
  constexpr explicit SometimeOrNever(Delay d) : value_(d) {}

  static constexpr SometimeOrNever never() { return SometimeOrNever(); }
  static constexpr SometimeOrNever sometime(Delay d) { return SometimeOrNever(d); }

  constexpr bool is_never() const { return !value_.has_value(); }
  constexpr const std::optional<Delay>& value() const { return value_; }

  friend constexpr bool operator==(const SometimeOrNever&, const SometimeOrNever&) = default;
  friend constexpr std::strong_ordering operator<=>(const SometimeOrNever& a,
                                                    const SometimeOrNever& b) {
    if (a.is_never() || b.is_never()) return a.is_never() <=> b.is_never();
    return *a.value_ <=> *b.value_;
  }

  /// Sum of delays; Never if either side is Never.
  friend SometimeOrNever operator+(const SometimeOrNever& a, const SometimeOrNever& b) {
    if (a.is_never() || b.is_never()) return never();
    return sometime(*a.value_ + *b.value_);
  }

 private:
  std::optional<Delay> value_;
};

inline std::string to_string(const SometimeOrNever& s) {
  return s.is_never() ? "Never" : std::to_string(s.value()->ticks());
}

inline std::ostream& operator<<(std::ostream& os, const SometimeOrNever& s) {
  return os << (s.is_never() ? std::string("Never") : "Sometime " + to_string(s));
}

struct EarliestTag {};
struct LatestTag {};

template <class Tag>
struct Bound {
  SometimeOrNever bound;

  friend constexpr bool operator==(const Bound&, const Bound&) = default;
  friend constexpr auto operator<=>(const Bound&, const Bound&) = default;
};

/// Lower bound: first delay with nonzero arrival mass.
using Earliest = Bound<EarliestTag>;
/// Upper bound: last delay, or Never when some mass is lost.
using Latest = Bound<LatestTag>;

template <class Tag>
std::ostream& operator<<(std::ostream& os, const Bound<Tag>& b) {
  return os << (std::is_same_v<Tag, EarliestTag> ? "Earliest " : "Latest ") << b.bound;
}

template <class Tag>
Bound<Tag> after(const Bound<Tag>& a, const Bound<Tag>& b) {
  return {a.bound + b.bound};
}
template <class Tag>
Bound<Tag> first_to_finish(const Bound<Tag>& a, const Bound<Tag>& b) {
  return {std::min(a.bound, b.bound)};
}
template <class Tag>
Bound<Tag> last_to_finish(const Bound<Tag>& a, const Bound<Tag>& b) {
  return {std::max(a.bound, b.bound)};
}

template <class Tag>
struct completion<Bound<Tag>> {
  static Bound<Tag> delay(Delay d) { return {SometimeOrNever::sometime(d)}; }
  static Bound<Tag> all_lost() { return {SometimeOrNever::never()}; }
  static Bound<Tag> no_delay() { return delay(Delay{0}); }
};

/// Bound of failover: the attempt's own bound survives only when it falls
/// strictly before the deadline; otherwise the fallback's bound shifted by
/// the deadline applies.
template <class Tag>
Bound<Tag> failover(Delay deadline, const Bound<Tag>& attempt, const Bound<Tag>& fallback) {
  if (!attempt.bound.is_never() && *attempt.bound.value() < deadline) return attempt;
  return {SometimeOrNever::sometime(deadline) + fallback.bound};
}

inline Earliest earliest_of(const LatencyDistribution& ld) {
  const auto& pdf = ld.pdf();
  if (pdf.size() == 1) return {pdf[0] == 0.0 ? SometimeOrNever::never()
                                             : SometimeOrNever::sometime(Delay{0})};
  if (pdf.empty() || pdf.back() == 0.0)
    throw ContractViolation("Canonical LatencyDistribution should always end with non-zero value");
  std::int64_t leading = 0;
  while (pdf[static_cast<std::size_t>(leading)] == 0.0) ++leading;
  return {SometimeOrNever::sometime(Delay{leading})};
}

inline Latest latest_of(const LatencyDistribution& ld) {
  const auto& pdf = ld.pdf();
  if (sum(pdf) < 1.0 - kIdealizedTolerance) return {SometimeOrNever::never()};
  if (pdf.back() == 0.0)
    throw ContractViolation("Canonical LatencyDistribution should always end with non-zero value");
  return {SometimeOrNever::sometime(Delay{static_cast<std::int64_t>(pdf.size()) - 1})};
}

}  // namespace dq
