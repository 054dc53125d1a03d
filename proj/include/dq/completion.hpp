#pragma once

// The interface shared by full latency distributions and their bounds:
// sequential composition, first/last-to-finish, and the nullary
// constructors delay(d), allLost, noDelay. `after` binds tighter than the
// two parallel operators.

#include <concepts>

#include "dq/latency.hpp"
#include "dq/numerics.hpp"

namespace dq {

template <class T>
struct completion;

template <class T>
concept TimeToCompletion = requires(const T& a, const T& b, Delay d) {
  { after(a, b) } -> std::same_as<T>;
  { first_to_finish(a, b) } -> std::same_as<T>;
  { last_to_finish(a, b) } -> std::same_as<T>;
  { completion<T>::delay(d) } -> std::same_as<T>;
  { completion<T>::all_lost() } -> std::same_as<T>;
  { completion<T>::no_delay() } -> std::same_as<T>;
};

template <>
struct completion<LatencyDistribution> {
  static LatencyDistribution delay(Delay d) { return delay_of(d); }
  static LatencyDistribution all_lost() { return dq::all_lost(); }
  static LatencyDistribution no_delay() { return delay(Delay{0}); }
};

/// Retransmission without cancelling the first attempt: `a` keeps running
/// and `b` is additionally started at `deadline`.
template <TimeToCompletion T>
T retransmit(Delay deadline, const T& a, const T& b) {
  return first_to_finish(a, after(completion<T>::delay(deadline), b));
}

}  // namespace dq
