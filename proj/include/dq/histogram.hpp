#pragma once

// K-out-of-N synchronization: given N independent timed events, the latency
// profile of "exactly k of them completed", and its average over broadcast
// sources of a network.

#include <cstddef>
#include <string>
#include <vector>

#include "dq/latency.hpp"
#include "dq/matrix.hpp"
#include "dq/numerics.hpp"
#include "dq/series.hpp"

namespace dq {

/// Index k holds the latency profile of reaching exactly k nodes.
using ReachHistogram = Series<LatencyDistribution>;

/// Elementwise complement of the pdf. The result is an intermediate value,
/// not a canonical distribution.
inline LatencyDistribution ld_complement(const LatencyDistribution& a) {
  return LatencyDistribution::raw(complement(a.pdf()));
}

/// Pointwise sum of two mutually exclusive distributions.
inline LatencyDistribution ex_add(const LatencyDistribution& a, const LatencyDistribution& b) {
  auto total = zip_with_expanding(
      [](double x, double y) {
        double s = x + y;
        if (s > 1.0 + kIdealizedTolerance)
          throw ExclusivityError("exclusive sum exceeds one: " + std::to_string(s));
        return s;
      },
      a.pdf(), b.pdf());
  return LatencyDistribution::raw(std::move(total));
}

inline LatencyDistribution ex_sum(const std::vector<LatencyDistribution>& terms) {
  if (terms.empty()) throw DomainError("exclusive sum of no terms");
  LatencyDistribution acc = terms.back();
  for (std::size_t i = terms.size() - 1; i-- > 0;) acc = ex_add(terms[i], acc);
  return acc;
}

namespace detail {

// Sum without the exclusivity budget. The pdf-wise complement makes
// multi-bin intermediates exceed one per bin, and averaging sums whole
// histograms before rescaling.
inline LatencyDistribution pointwise_sum(const LatencyDistribution& a, const LatencyDistribution& b) {
  return LatencyDistribution::raw(add_series(a.pdf(), b.pdf()));
}

}  // namespace detail

/// F(a_n) = [complement a_n, a_n] ⊛ F(a_{n-1}), convolving with pointwise
/// sum as addition and lastToFinish as multiplication.
inline ReachHistogram k_out_of_n(const Series<LatencyDistribution>& v) {
  if (v.empty()) throw DomainError("kOutOfN of empty series");
  auto single = [](const LatencyDistribution& x) {
    return ReachHistogram{ld_complement(x), x};
  };
  ReachHistogram acc = single(v.back());
  for (std::size_t i = v.size() - 1; i-- > 0;)
    acc = general_convolve(
        [](const LatencyDistribution& x, const LatencyDistribution& y) {
          return detail::pointwise_sum(x, y);
        },
        [](const LatencyDistribution& x, const LatencyDistribution& y) {
          return last_to_finish(x, y);
        },
        single(v[i]), acc);
  return acc;
}

/// Histogram of the number of nodes reached from one matrix row.
inline ReachHistogram nodes_reached(const Series<LatencyDistribution>& row) {
  return k_out_of_n(row);
}

/// Sums the histograms bin by bin, then attenuates each bin by 1/count.
inline ReachHistogram average(const std::vector<ReachHistogram>& histograms) {
  if (histograms.empty()) throw DomainError("average of no histograms");
  const std::size_t bins = histograms.front().size();
  for (const auto& h : histograms)
    if (h.size() != bins) throw DomainError("average of histograms with different lengths");
  Probability weight(1.0 / static_cast<double>(histograms.size()));
  std::vector<LatencyDistribution> out;
  out.reserve(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    LatencyDistribution acc = histograms.back()[k];
    for (std::size_t i = histograms.size() - 1; i-- > 0;)
      acc = detail::pointwise_sum(histograms[i][k], acc);
    out.push_back(scale_probability(weight, acc));
  }
  return ReachHistogram(std::move(out));
}

/// Histogram of nodes reached for a uniformly chosen source row.
inline ReachHistogram average_k_out_of_n(const NetworkMatrix& m) {
  std::vector<ReachHistogram> per_source;
  per_source.reserve(m.size());
  for (auto& row : m.rows()) per_source.push_back(nodes_reached(Series<LatencyDistribution>(std::move(row))));
  return average(per_source);
}

}  // namespace dq
