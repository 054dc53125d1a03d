#pragma once

// The analyses behind the command-line tool. Each command writes CSV to the
// given stream and reports input problems by throwing ParseError,
// DomainError or ConvergenceError.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "dq/bounds.hpp"
#include "dq/csv.hpp"
#include "dq/expression.hpp"
#include "dq/histogram.hpp"
#include "dq/latency.hpp"
#include "dq/matrix.hpp"
#include "dq/network.hpp"
#include "dq/simulate.hpp"

namespace dq {

struct CommandOptions {
  bool summary = false;
  bool simulate = false;
  RngSeed seed{0};
  std::size_t samples = 10000;
  /// Last tick rendered; defaults to the largest deadline involved.
  std::optional<Delay> horizon;
};

namespace detail {

inline std::size_t render_horizon(const CommandOptions& options, std::size_t fallback) {
  return options.horizon ? static_cast<std::size_t>(options.horizon->ticks()) : fallback;
}

inline std::size_t max_deadline(const NetworkMatrix& m) {
  std::size_t out = 0;
  for (const auto& cell : m.cells()) out = std::max(out, cell.pdf().size() - 1);
  return out;
}

// counts[t] = trials whose outcome arrived exactly at t (t <= horizon).
inline std::vector<std::size_t> arrival_histogram(const std::vector<SampleOutcome>& outcomes, std::size_t horizon) {
  std::vector<std::size_t> counts(horizon + 1, 0);
  for (const auto& s : outcomes)
    if (s.is_arrived() && static_cast<std::size_t>(s.delay().ticks()) <= horizon)
      ++counts[static_cast<std::size_t>(s.delay().ticks())];
  return counts;
}

// Broadcast trials from one source, seeded per source.
inline std::vector<std::vector<SampleOutcome>> broadcast_trials(const NetworkMatrix& m, std::size_t source,
                                                                const CommandOptions& options) {
  Rng rng(derive_seed(options.seed, source));
  std::vector<std::vector<SampleOutcome>> trials;
  trials.reserve(options.samples);
  for (std::size_t i = 0; i < options.samples; ++i) trials.push_back(simulate_broadcast(m, source, rng));
  return trials;
}

inline std::size_t reached_by(const std::vector<SampleOutcome>& trial, std::size_t t) {
  return static_cast<std::size_t>(std::count_if(trial.begin(), trial.end(), [t](const SampleOutcome& s) {
    return s.is_arrived() && static_cast<std::size_t>(s.delay().ticks()) <= t;
  }));
}

inline void require_samples(const CommandOptions& options) {
  if (options.simulate && options.samples == 0) throw DomainError("--samples must be positive");
}

}  // namespace detail

/// Rows `t,pdf,cdf` of the evaluated expression; with simulation also
/// `mc_pdf,mc_cdf` from independent draws of the expression.
inline void cmd_eval(std::string_view expression, const CommandOptions& options, std::ostream& out) {
  detail::require_samples(options);
  auto expr = parse_expression(expression);
  auto ld = evaluate<LatencyDistribution>(*expr);
  std::size_t horizon = detail::render_horizon(options, ld.pdf().size() - 1);

  std::vector<std::size_t> counts;
  if (options.simulate) {
    Rng rng(options.seed);
    std::vector<SampleOutcome> outcomes;
    outcomes.reserve(options.samples);
    for (std::size_t i = 0; i < options.samples; ++i) outcomes.push_back(simulate_expression(*expr, rng));
    counts = detail::arrival_histogram(outcomes, horizon);
  }

  out << "t,pdf,cdf" << (options.simulate ? ",mc_pdf,mc_cdf" : "") << '\n';
  std::size_t running = 0;
  for (std::size_t t = 0; t <= horizon; ++t) {
    out << t << ',' << csv::format_number(csv::pdf_at(ld, t)) << ',' << csv::format_number(csv::cdf_at(ld, t));
    if (options.simulate) {
      running += counts[t];
      auto n = static_cast<double>(options.samples);
      out << ',' << csv::format_number(static_cast<double>(counts[t]) / n) << ','
          << csv::format_number(static_cast<double>(running) / n);
    }
    out << '\n';
  }
}

/// Per-pair rows `src,dst,t,cdf` of the optimal connection matrix. With
/// `summary`, adds per-source `src,t,all_reached` (lastToFinish across the
/// row) and the strong-connectivity verdict.
inline void cmd_reachability(std::string_view network, const CommandOptions& options, std::ostream& out) {
  detail::require_samples(options);
  auto spec = parse_network(network);
  auto limit = optimal_connections(to_matrix(spec));
  const std::size_t n = limit.size();
  std::size_t horizon = detail::render_horizon(options, detail::max_deadline(limit));

  std::vector<std::vector<std::vector<SampleOutcome>>> trials(n);
  if (options.simulate)
    for (std::size_t s = 0; s < n; ++s) trials[s] = detail::broadcast_trials(to_matrix(spec), s, options);
  auto fraction = [&](std::size_t s, auto&& predicate) {
    std::size_t hits = 0;
    for (const auto& trial : trials[s]) hits += predicate(trial) ? 1 : 0;
    return csv::format_number(static_cast<double>(hits) / static_cast<double>(options.samples));
  };

  out << "src,dst,t,cdf" << (options.simulate ? ",mc_cdf" : "") << '\n';
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t d = 0; d < n; ++d)
      for (std::size_t t = 0; t <= horizon; ++t) {
        out << spec.nodes[s] << ',' << spec.nodes[d] << ',' << t << ',' << csv::format_number(csv::cdf_at(limit(s, d), t));
        if (options.simulate)
          out << ',' << fraction(s, [&](const auto& trial) {
            return trial[d].is_arrived() && static_cast<std::size_t>(trial[d].delay().ticks()) <= t;
          });
        out << '\n';
      }

  if (!options.summary) return;
  out << "\nsrc,t,all_reached" << (options.simulate ? ",mc_all_reached" : "") << '\n';
  for (std::size_t s = 0; s < n; ++s) {
    LatencyDistribution all = limit(s, 0);
    for (std::size_t d = 1; d < n; ++d) all = last_to_finish(all, limit(s, d));
    for (std::size_t t = 0; t <= horizon; ++t) {
      out << spec.nodes[s] << ',' << t << ',' << csv::format_number(csv::cdf_at(all, t));
      if (options.simulate)
        out << ',' << fraction(s, [&](const auto& trial) { return detail::reached_by(trial, t) == n; });
      out << '\n';
    }
  }
  bool connected = std::all_of(limit.cells().begin(), limit.cells().end(),
                               [](const LatencyDistribution& c) { return ultimate_arrival(c) > 0.0; });
  out << "\nverdict," << (connected ? "strongly connected" : "not strongly connected") << '\n';
}

/// Rows `k,t,value`: CDF of the averaged k-out-of-n histogram bin k. With
/// simulation, `mc` is the fraction of broadcast trials (averaged over
/// sources) that reached exactly k nodes by time t.
inline void cmd_histogram(std::string_view network, const CommandOptions& options, std::ostream& out) {
  detail::require_samples(options);
  auto spec = parse_network(network);
  auto matrix = to_matrix(spec);
  auto limit = optimal_connections(matrix);
  auto histogram = average_k_out_of_n(limit);
  const std::size_t n = limit.size();
  std::size_t horizon = detail::render_horizon(options, detail::max_deadline(limit));

  // mc[k][t]
  std::vector<std::vector<double>> mc;
  if (options.simulate) {
    mc.assign(n + 1, std::vector<double>(horizon + 1, 0.0));
    double weight = 1.0 / (static_cast<double>(n) * static_cast<double>(options.samples));
    for (std::size_t s = 0; s < n; ++s)
      for (const auto& trial : detail::broadcast_trials(matrix, s, options))
        for (std::size_t t = 0; t <= horizon; ++t) mc[detail::reached_by(trial, t)][t] += weight;
  }

  out << "k,t,value" << (options.simulate ? ",mc" : "") << '\n';
  for (std::size_t k = 0; k < histogram.size(); ++k)
    for (std::size_t t = 0; t <= horizon; ++t) {
      out << k << ',' << t << ',' << csv::format_number(csv::cdf_at(histogram[k], t));
      if (options.simulate) out << ',' << csv::format_number(mc[k][t]);
      out << '\n';
    }
}

struct BoundsReport {
  Earliest earliest_from_distribution, earliest_from_bounds;
  Latest latest_from_distribution, latest_from_bounds;

  bool agree() const {
    return earliest_from_distribution == earliest_from_bounds && latest_from_distribution == latest_from_bounds;
  }
};

/// Bounds of the expression computed two ways: from its full distribution
/// and by evaluating the expression directly over Earliest and Latest.
inline BoundsReport bounds_report(std::string_view expression) {
  auto expr = parse_expression(expression);
  auto ld = evaluate<LatencyDistribution>(*expr);
  return {earliest_of(ld), evaluate<Earliest>(*expr), latest_of(ld), evaluate<Latest>(*expr)};
}

/// Rows `route,earliest,latest` for both routes. Returns whether they agree.
inline bool cmd_bounds(std::string_view expression, std::ostream& out) {
  auto report = bounds_report(expression);
  out << "route,earliest,latest\n";
  out << "distribution," << to_string(report.earliest_from_distribution.bound) << ','
      << to_string(report.latest_from_distribution.bound) << '\n';
  out << "bounds," << to_string(report.earliest_from_bounds.bound) << ','
      << to_string(report.latest_from_bounds.bound) << '\n';
  return report.agree();
}

}  // namespace dq
