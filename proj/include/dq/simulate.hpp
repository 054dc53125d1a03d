#pragma once

// Monte-Carlo sampling semantics for distributions, operators and network
// broadcast. Independent of the analytic operators: nothing here calls the
// series-level composition code.
//
// Stream semantics: a Rng wraps std::mt19937_64 seeded with the 64-bit
// seed. Each uniform draw consumes exactly one engine output u and yields
// (u >> 11) * 2^-53. Both parts are fully specified by the C++ standard, so
// streams are identical on every conforming platform.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <queue>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "dq/latency.hpp"
#include "dq/matrix.hpp"
#include "dq/numerics.hpp"

namespace dq {

struct RngSeed {
  std::uint64_t value = 0;
};

/// SplitMix64 finalizer over (seed, stream); gives independent per-task
/// seeds without sharing a generator.
inline RngSeed derive_seed(RngSeed base, std::uint64_t stream) {
  std::uint64_t z = base.value + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return {z ^ (z >> 31)};
}

class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

class SampleOutcome {
 public:
  static SampleOutcome arrived(Delay d) { return SampleOutcome(d); }
  static SampleOutcome lost() { return SampleOutcome(); }

  bool is_arrived() const { return delay_.has_value(); }
  bool is_lost() const { return !delay_.has_value(); }
  /// Precondition: is_arrived().
  Delay delay() const { return *delay_; }

  friend bool operator==(const SampleOutcome&, const SampleOutcome&) = default;

 private:
  SampleOutcome() = default;
  explicit SampleOutcome(Delay d) : delay_(d) {}
  std::optional<Delay> delay_;
};

inline std::ostream& operator<<(std::ostream& os, const SampleOutcome& s) {
  if (s.is_lost()) return os << "Lost";
  return os << "Arrived " << s.delay().ticks();
}

/// Arrived(i) with probability pdf[i], Lost with the remaining mass.
inline SampleOutcome sample_ld(const LatencyDistribution& ld, Rng& rng) {
  double u = rng.uniform();
  double cumulative = 0.0;
  const auto& pdf = ld.pdf();
  for (std::size_t i = 0; i < pdf.size(); ++i) {
    cumulative += pdf[i];
    if (u < cumulative) return SampleOutcome::arrived(Delay(static_cast<std::int64_t>(i)));
  }
  return SampleOutcome::lost();
}

enum class OpTag { After, FirstToFinish, LastToFinish, Failover, Retransmit };

struct Operator {
  OpTag tag;
  Delay deadline{};  // Failover and Retransmit only
};

/// Outcome of one operator given one sample of each operand.
inline SampleOutcome simulate_op(Operator op, const SampleOutcome& a, const SampleOutcome& b) {
  auto shifted = [&](const SampleOutcome& s) {
    return s.is_lost() ? s : SampleOutcome::arrived(op.deadline + s.delay());
  };
  auto earlier = [](const SampleOutcome& x, const SampleOutcome& y) {
    if (x.is_lost()) return y;
    if (y.is_lost()) return x;
    return x.delay() <= y.delay() ? x : y;
  };
  switch (op.tag) {
    case OpTag::After:
      if (a.is_lost() || b.is_lost()) return SampleOutcome::lost();
      return SampleOutcome::arrived(a.delay() + b.delay());
    case OpTag::FirstToFinish:
      return earlier(a, b);
    case OpTag::LastToFinish:
      if (a.is_lost() || b.is_lost()) return SampleOutcome::lost();
      return a.delay() >= b.delay() ? a : b;
    case OpTag::Failover:
      if (a.is_arrived() && a.delay() < op.deadline) return a;
      return shifted(b);
    case OpTag::Retransmit:
      return earlier(a, shifted(b));
  }
  throw std::invalid_argument("unknown operator tag");
}

/// Fraction of samples arriving at each delay up to `horizon`; later
/// arrivals count as lost.
inline LatencyDistribution empirical_distribution(std::span<const SampleOutcome> samples, Delay horizon) {
  if (samples.empty()) throw DomainError("empirical distribution of no samples");
  std::vector<std::size_t> counts(static_cast<std::size_t>(horizon.ticks()) + 1, 0);
  for (const auto& s : samples)
    if (s.is_arrived() && s.delay() <= horizon) ++counts[static_cast<std::size_t>(s.delay().ticks())];
  std::vector<double> pdf;
  pdf.reserve(counts.size());
  for (auto c : counts) pdf.push_back(static_cast<double>(c) / static_cast<double>(samples.size()));
  return canonicalize(Series<double>(std::move(pdf)));
}

/// Empirical distribution of `op(a, b)` from `samples` independent draws of
/// each operand (a first, then b, per trial).
inline LatencyDistribution monte_carlo_op(Operator op, const LatencyDistribution& a,
                                          const LatencyDistribution& b, std::size_t samples,
                                          RngSeed seed, Delay horizon) {
  Rng rng(seed);
  std::vector<SampleOutcome> outcomes;
  outcomes.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    auto x = sample_ld(a, rng);
    auto y = sample_ld(b, rng);
    outcomes.push_back(simulate_op(op, x, y));
  }
  return empirical_distribution(outcomes, horizon);
}

/// One broadcast trial from `source`. Every off-diagonal edge is sampled
/// once, in row-major order; each node's outcome is its shortest sampled
/// path from the source, or Lost when no sampled path exists.
inline std::vector<SampleOutcome> simulate_broadcast(const NetworkMatrix& m, std::size_t source, Rng& rng) {
  const std::size_t n = m.size();
  if (source >= n) throw std::out_of_range("broadcast source outside network");
  constexpr std::int64_t kNoEdge = -1;
  std::vector<std::int64_t> weight(n * n, kNoEdge);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      auto s = sample_ld(m(i, j), rng);
      if (s.is_arrived()) weight[i * n + j] = s.delay().ticks();
    }

  constexpr auto kUnreached = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> dist(n, kUnreached);
  using Entry = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  dist[source] = 0;
  frontier.emplace(0, source);
  while (!frontier.empty()) {
    auto [d, u] = frontier.top();
    frontier.pop();
    if (d > dist[u]) continue;
    for (std::size_t v = 0; v < n; ++v) {
      auto w = weight[u * n + v];
      if (w == kNoEdge || d + w >= dist[v]) continue;
      dist[v] = d + w;
      frontier.emplace(dist[v], v);
    }
  }

  std::vector<SampleOutcome> out;
  out.reserve(n);
  for (auto d : dist)
    out.push_back(d == kUnreached ? SampleOutcome::lost() : SampleOutcome::arrived(Delay(d)));
  return out;
}

}  // namespace dq
