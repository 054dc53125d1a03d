#pragma once

// Improper latency distributions (the ΔQ object) and their composition
// operators. A distribution stores the probability mass of arrival at each
// discrete delay; the deficit of the total mass below one is the loss rate.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dq/numerics.hpp"
#include "dq/series.hpp"

namespace dq {

class LatencyDistribution;
LatencyDistribution canonicalize(const Series<double>& raw);

class LatencyDistribution {
 public:
  /// allLost
  LatencyDistribution() : pdf_{0.0} {}

  /// Wraps a series without canonicalizing it. Only intermediate values
  /// (complements, unnormalized sums) should be built this way.
  static LatencyDistribution raw(Series<double> pdf) { return LatencyDistribution(std::move(pdf)); }

  const Series<double>& pdf() const { return pdf_; }

  /// Mass within [0, 1], elements within [0, 1], no trailing zeros after
  /// the first element.
  bool is_canonical() const {
    if (pdf_.empty()) return false;
    if (pdf_.size() > 1 && pdf_.back() == 0.0) return false;
    double total = 0.0;
    for (double x : pdf_) {
      if (!(x >= 0.0) || x > 1.0) return false;
      total += x;
    }
    return total <= 1.0 + kIdealizedTolerance;
  }

  friend bool operator==(const LatencyDistribution&, const LatencyDistribution&) = default;

 private:
  friend LatencyDistribution canonicalize(const Series<double>& raw);
  explicit LatencyDistribution(Series<double> pdf) : pdf_(std::move(pdf)) {}

  Series<double> pdf_;
};

inline std::ostream& operator<<(std::ostream& os, const LatencyDistribution& ld) {
  return os << "LD" << ld.pdf();
}

/// Truncates the prefix at cumulative mass one (clipping the crossing
/// element), drops trailing zeros, and maps the empty series to [0].
/// Rounding residue below kNoiseFloor is treated as zero.
inline LatencyDistribution canonicalize(const Series<double>& raw) {
  std::vector<double> out;
  out.reserve(raw.size());
  double mass = 0.0;
  for (double x : raw) {
    if (std::isnan(x)) throw DomainError("NaN in distribution");
    if (std::abs(x) < kNoiseFloor) x = 0.0;
    if (x < 0.0) throw DomainError("negative probability in distribution: " + std::to_string(x));
    if (mass + x > 1.0) {
      out.push_back(1.0 - mass);
      break;
    }
    out.push_back(x);
    mass += x;
  }
  while (!out.empty() && std::abs(out.back()) < kNoiseFloor) out.pop_back();
  if (out.empty()) out.push_back(0.0);
  if (out.size() - 1 > static_cast<std::size_t>(kMaxHorizon))
    throw HorizonError("distribution extends past horizon " + std::to_string(kMaxHorizon));
  return LatencyDistribution(Series<double>(std::move(out)));
}

inline LatencyDistribution from_pdf(const Series<double>& pdf) { return canonicalize(pdf); }

namespace detail {

inline void require_cdf(const Series<double>& cdf, bool increasing) {
  double previous = increasing ? 0.0 : 1.0;
  for (double x : cdf) {
    if (!(x >= -kIdealizedTolerance) || x > 1.0 + kIdealizedTolerance)
      throw DomainError("cumulative value outside [0,1]: " + std::to_string(x));
    if (increasing ? x < previous - kIdealizedTolerance : x > previous + kIdealizedTolerance)
      throw DomainError(increasing ? "CDF must be non-decreasing"
                                   : "complement of CDF must be non-increasing");
    previous = x;
  }
}

// Operator internals feed CDFs that are monotone by construction but may
// come from non-canonical intermediates (complemented pdfs), so the range
// check is skipped.
inline LatencyDistribution from_cdf_unchecked(const Series<double>& cdf) {
  return canonicalize(diff_enc(cdf));
}

}  // namespace detail

inline LatencyDistribution from_cdf(const Series<double>& cdf) {
  detail::require_cdf(cdf, true);
  return detail::from_cdf_unchecked(cdf);
}

inline LatencyDistribution from_complement_of_cdf(const Series<double>& ccdf) {
  detail::require_cdf(ccdf, false);
  return from_cdf(complement(ccdf));
}

inline Series<double> cdf(const LatencyDistribution& ld) { return cumsum(ld.pdf()); }

inline Series<double> complement_cdf(const LatencyDistribution& ld) {
  auto c = cdf(ld);
  std::vector<double> out;
  out.reserve(c.size());
  for (double x : c) out.push_back(1.0 - x);
  return Series<double>(std::move(out));
}

inline LatencyDistribution preserved(Probability p) {
  return LatencyDistribution::raw(Series<double>{std::min(p.value(), 1.0)});
}
inline LatencyDistribution all_lost() { return preserved(Probability(0.0)); }
inline LatencyDistribution no_delay() { return preserved(Probability(1.0)); }

/// Point mass at `d`.
inline LatencyDistribution delay_of(Delay d) {
  std::vector<double> pdf(static_cast<std::size_t>(d.ticks()), 0.0);
  pdf.push_back(1.0);
  return LatencyDistribution::raw(Series<double>(std::move(pdf)));
}

/// Pads pdfs with zeros (equivalently CDFs with their final value) to a
/// common length.
inline std::pair<Series<double>, Series<double>> extend_to_same_length_ld(
    const LatencyDistribution& a, const LatencyDistribution& b) {
  return extend_to_same_length(0.0, a.pdf(), b.pdf());
}

/// Sequential composition: convolution of the pdfs.
inline LatencyDistribution after(const LatencyDistribution& a, const LatencyDistribution& b) {
  if (a.pdf().size() + b.pdf().size() > static_cast<std::size_t>(kMaxHorizon) + 2)
    throw HorizonError("sequential composition exceeds horizon");
  return from_pdf(convolve(a.pdf(), b.pdf()));
}

/// Earliest of two independent alternatives: product of the complement CDFs.
inline LatencyDistribution first_to_finish(const LatencyDistribution& a,
                                           const LatencyDistribution& b) {
  auto [pa, pb] = extend_to_same_length_ld(a, b);
  auto ca = cumsum(pa), cb = cumsum(pb);
  std::vector<double> out(ca.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 - (1.0 - ca[i]) * (1.0 - cb[i]);
  return detail::from_cdf_unchecked(Series<double>(std::move(out)));
}

/// Same operator computed directly on pdfs:
/// a·(1 - cdf b) + b·(1 - cdf a) + a·b.
inline LatencyDistribution first_to_finish_direct(const LatencyDistribution& a,
                                                  const LatencyDistribution& b) {
  auto [pa, pb] = extend_to_same_length_ld(a, b);
  auto ca = cumsum(pa), cb = cumsum(pb);
  std::vector<double> out(pa.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = pa[i] * (1.0 - cb[i]) + pb[i] * (1.0 - ca[i]) + pa[i] * pb[i];
  return canonicalize(Series<double>(std::move(out)));
}

/// Both must finish: product of the CDFs.
inline LatencyDistribution last_to_finish(const LatencyDistribution& a,
                                          const LatencyDistribution& b) {
  auto [pa, pb] = extend_to_same_length_ld(a, b);
  return detail::from_cdf_unchecked(elementwise_mult(cumsum(pa), cumsum(pb)));
}

/// Runs `attempt` until `deadline`; arrivals at ticks 0..deadline-1 are
/// kept and the remaining mass is handed to `fallback`, whose clock starts
/// at `deadline`.
inline LatencyDistribution failover(Delay deadline, const LatencyDistribution& attempt,
                                    const LatencyDistribution& fallback) {
  auto initial = cut(deadline, attempt.pdf()).coefficients();
  double remainder = 1.0 - sum(Series<double>(initial));
  initial.resize(static_cast<std::size_t>(deadline.ticks()), 0.0);
  for (double x : fallback.pdf()) initial.push_back(remainder * x);
  return from_pdf(Series<double>(std::move(initial)));
}

inline LatencyDistribution scale_probability(Probability p, const LatencyDistribution& a) {
  return after(preserved(p), a);
}

inline LatencyDistribution scale_delay(Delay d, const LatencyDistribution& a) {
  return after(delay_of(d), a);
}

/// Index of the last pdf element.
inline Delay deadline_of(const LatencyDistribution& a) {
  return Delay(static_cast<std::int64_t>(a.pdf().size()) - 1);
}

/// Total arrival mass.
inline double ultimate_arrival(const LatencyDistribution& a) { return sum(a.pdf()); }

/// True when the CDF of `a`, extended past its deadline by its final value,
/// never falls below that of `b`.
inline bool no_worse_than(const LatencyDistribution& a, const LatencyDistribution& b) {
  auto [pa, pb] = extend_to_same_length_ld(a, b);
  auto ca = cumsum(pa), cb = cumsum(pb);
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (ca[i] < cb[i] - kIdealizedTolerance) return false;
  return true;
}

/// Sum of squared pdf differences (no square root).
inline double ld_distance(const LatencyDistribution& a, const LatencyDistribution& b) {
  double total = 0.0;
  for (double x : a.pdf() - b.pdf()) total += x * x;
  return total;
}

template <>
struct Metric<LatencyDistribution> {
  static double distance(const LatencyDistribution& a, const LatencyDistribution& b) {
    return ld_distance(a, b);
  }
  static constexpr double similarity_threshold = 1.0 / 1000;
};

template <>
struct Unit<LatencyDistribution> {
  static LatencyDistribution value() { return no_delay(); }
};
template <>
struct Null<LatencyDistribution> {
  static LatencyDistribution value() { return all_lost(); }
};

}  // namespace dq
