#pragma once

// Network descriptions and their connectivity matrices.
//
// Line-oriented text format ('#' starts a comment):
//
//   directed                                  optional; edges are undirected otherwise
//   node a b c                                declares node ids
//   edge a b delay:1                          point mass
//   edge a c pdf:[0.5,0.5] reliability:0.9    reliability attenuates the edge
//   edge b c cdf:[0.2,1]
//   edge c a preserved:0.8
//   edge c b uniform:1..3                     equal mass on delays 1, 2, 3
//
// The same content as JSON (detected by a leading '{'):
//
//   {"directed": false, "nodes": ["a", "b"],
//    "edges": [{"from": "a", "to": "b", "dist": {"delay": 1}, "reliability": 0.9}]}
//
// where "dist" is one of {"pdf": [...]}, {"cdf": [...]}, {"delay": n},
// {"preserved": p} or {"uniform": {"from": n, "to": m}}.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dq/detail/scanner.hpp"
#include "dq/latency.hpp"
#include "dq/matrix.hpp"
#include "dq/parse_error.hpp"

namespace dq {

struct PdfDist {
  std::vector<double> values;
};
struct CdfDist {
  std::vector<double> values;
};
struct DelayDist {
  Delay delay;
};
struct PreservedDist {
  double probability;
};
/// Equal mass on every delay in [from, to].
struct UniformDist {
  Delay from, to;
};

using DistSpec = std::variant<PdfDist, CdfDist, DelayDist, PreservedDist, UniformDist>;

struct SourcePosition {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct EdgeSpec {
  std::string from, to;
  DistSpec dist;
  std::optional<double> reliability;
  SourcePosition from_pos, to_pos;
};

struct NetworkSpec {
  std::vector<std::string> nodes;
  std::vector<EdgeSpec> edges;
  bool directed = false;
};

inline LatencyDistribution to_distribution(const DistSpec& spec) {
  return std::visit(
      [](const auto& d) -> LatencyDistribution {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PdfDist>) {
          for (double x : d.values)
            if (!(x >= 0.0 && x <= 1.0)) throw DomainError("pdf value outside [0,1]");
          if (sum(Series<double>(d.values)) > 1.0 + kApproximateTolerance)
            throw DomainError("pdf mass exceeds one");
          return from_pdf(Series<double>(d.values));
        } else if constexpr (std::is_same_v<T, CdfDist>) {
          return from_cdf(Series<double>(d.values));
        } else if constexpr (std::is_same_v<T, DelayDist>) {
          return delay_of(d.delay);
        } else if constexpr (std::is_same_v<T, PreservedDist>) {
          return preserved(Probability(d.probability));
        } else {
          if (d.to < d.from) throw DomainError("uniform window is empty");
          auto width = static_cast<double>(d.to.ticks() - d.from.ticks() + 1);
          std::vector<double> pdf(static_cast<std::size_t>(d.from.ticks()), 0.0);
          pdf.resize(static_cast<std::size_t>(d.to.ticks()) + 1, 1.0 / width);
          return from_pdf(Series<double>(std::move(pdf)));
        }
      },
      spec);
}

/// Edge distribution after reliability attenuation.
inline LatencyDistribution edge_distribution(const EdgeSpec& edge) {
  auto ld = to_distribution(edge.dist);
  if (edge.reliability) ld = scale_probability(Probability(*edge.reliability), ld);
  return ld;
}

namespace detail {

inline std::size_t node_index(const NetworkSpec& spec, const std::string& id, SourcePosition pos) {
  for (std::size_t i = 0; i < spec.nodes.size(); ++i)
    if (spec.nodes[i] == id) return i;
  throw ParseError(ParseErrorCode::UnknownNode, pos.line, pos.column, "unknown node id '" + id + "'");
}

// Resolves endpoints and rejects duplicates; shared by both input formats.
inline void validate(const NetworkSpec& spec, const std::vector<SourcePosition>& node_pos,
                     const std::vector<SourcePosition>& dist_pos,
                     const std::vector<SourcePosition>& reliability_pos) {
  if (spec.nodes.empty()) throw ParseError(ParseErrorCode::Syntax, 1, 1, "network declares no nodes");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i)
    if (!seen.insert(spec.nodes[i]).second)
      throw ParseError(ParseErrorCode::DuplicateNode, node_pos[i].line, node_pos[i].column,
                       "node id '" + spec.nodes[i] + "' declared twice");
  std::set<std::pair<std::size_t, std::size_t>> links;
  for (std::size_t e = 0; e < spec.edges.size(); ++e) {
    const auto& edge = spec.edges[e];
    auto i = node_index(spec, edge.from, edge.from_pos);
    auto j = node_index(spec, edge.to, edge.to_pos);
    if (i == j)
      throw ParseError(ParseErrorCode::Syntax, edge.to_pos.line, edge.to_pos.column,
                       "self-loop on node '" + edge.from + "'");
    bool fresh = links.insert({i, j}).second;
    if (!spec.directed) fresh = links.insert({j, i}).second && fresh;
    if (!fresh)
      throw ParseError(ParseErrorCode::DuplicateEdge, edge.from_pos.line, edge.from_pos.column,
                       "edge " + edge.from + " -> " + edge.to + " declared twice");
    if (edge.reliability && !(*edge.reliability >= 0.0 && *edge.reliability <= 1.0))
      throw ParseError(ParseErrorCode::InvalidProbability, reliability_pos[e].line, reliability_pos[e].column,
                       "reliability outside [0,1]");
    auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    bool bad_probability = std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, PreservedDist>) return !in_unit(d.probability);
          else if constexpr (std::is_same_v<T, PdfDist> || std::is_same_v<T, CdfDist>)
            return !std::all_of(d.values.begin(), d.values.end(), in_unit);
          else return false;
        },
        edge.dist);
    if (bad_probability)
      throw ParseError(ParseErrorCode::InvalidProbability, dist_pos[e].line, dist_pos[e].column,
                       "probability outside [0,1]");
    try {
      (void)to_distribution(edge.dist);
    } catch (const std::exception& ex) {
      throw ParseError(ParseErrorCode::InvalidDistribution, dist_pos[e].line, dist_pos[e].column, ex.what());
    }
  }
}

class TextNetworkParser {
 public:
  explicit TextNetworkParser(std::string_view text) : text_(text) {}

  NetworkSpec parse() {
    std::size_t line_no = 0;
    std::size_t begin = 0;
    while (begin <= text_.size()) {
      std::size_t end = text_.find('\n', begin);
      if (end == std::string_view::npos) end = text_.size();
      ++line_no;
      parse_line(text_.substr(begin, end - begin), line_no);
      begin = end + 1;
    }
    validate(spec_, node_pos_, dist_pos_, reliability_pos_);
    return spec_;
  }

 private:
  void parse_line(std::string_view line, std::size_t line_no) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Scanner scan(line, line_no);
    scan.skip_space();
    if (scan.at_end()) return;
    SourcePosition keyword_pos{scan.line(), scan.column()};
    auto keyword = scan.identifier();
    if (keyword == "directed") {
      spec_.directed = true;
    } else if (keyword == "node") {
      scan.skip_space();
      if (scan.at_end()) scan.fail(ParseErrorCode::Syntax, "expected a node id");
      while (!scan.at_end()) {
        SourcePosition pos{scan.line(), scan.column()};
        auto id = scan.identifier();
        if (id.empty()) scan.fail(ParseErrorCode::Syntax, "expected a node id" + scan.found());
        spec_.nodes.push_back(id);
        node_pos_.push_back(pos);
        scan.skip_space();
      }
    } else if (keyword == "edge") {
      EdgeSpec edge;
      edge.from = endpoint(scan, edge.from_pos);
      edge.to = endpoint(scan, edge.to_pos);
      scan.skip_space();
      SourcePosition dist_pos{scan.line(), scan.column()};
      edge.dist = dist(scan);
      SourcePosition rel_pos{};
      scan.skip_space();
      if (!scan.at_end()) {
        rel_pos = {scan.line(), scan.column()};
        if (scan.identifier() != "reliability")
          throw ParseError(ParseErrorCode::Syntax, rel_pos.line, rel_pos.column, "expected 'reliability:<p>'");
        scan.expect(":");
        rel_pos = {scan.line(), scan.column()};
        edge.reliability = scan.number();
        scan.skip_space();
        if (!scan.at_end()) scan.fail(ParseErrorCode::Syntax, "unexpected trailing input" + scan.found());
      }
      spec_.edges.push_back(std::move(edge));
      dist_pos_.push_back(dist_pos);
      reliability_pos_.push_back(rel_pos);
    } else {
      throw ParseError(ParseErrorCode::Syntax, keyword_pos.line, keyword_pos.column,
                       "expected 'node', 'edge' or 'directed'");
    }
    scan.skip_space();
    if (!scan.at_end()) scan.fail(ParseErrorCode::Syntax, "unexpected trailing input" + scan.found());
  }

  static std::string endpoint(Scanner& scan, SourcePosition& pos) {
    scan.skip_space();
    pos = {scan.line(), scan.column()};
    auto id = scan.identifier();
    if (id.empty()) scan.fail(ParseErrorCode::Syntax, "expected a node id" + scan.found());
    return id;
  }

  static std::vector<double> values(Scanner& scan) {
    scan.expect("[");
    std::vector<double> out;
    scan.skip_space();
    if (scan.accept("]")) return out;
    do {
      scan.skip_space();
      out.push_back(scan.number());
      scan.skip_space();
    } while (scan.accept(","));
    scan.expect("]");
    return out;
  }

  static Delay delay(Scanner& scan) {
    std::size_t l = scan.line(), c = scan.column();
    auto ticks = scan.integer();
    if (ticks < 0 || ticks > kMaxHorizon)
      throw ParseError(ParseErrorCode::InvalidDistribution, l, c, "delay outside [0, horizon]");
    return Delay(ticks);
  }

  static DistSpec dist(Scanner& scan) {
    std::size_t l = scan.line(), c = scan.column();
    auto kind = scan.identifier();
    scan.expect(":");
    if (kind == "pdf") return PdfDist{values(scan)};
    if (kind == "cdf") return CdfDist{values(scan)};
    if (kind == "delay") return DelayDist{delay(scan)};
    if (kind == "preserved") return PreservedDist{scan.number()};
    if (kind == "uniform") {
      auto from = delay(scan);
      scan.expect("..");
      return UniformDist{from, delay(scan)};
    }
    throw ParseError(ParseErrorCode::Syntax, l, c,
                     "unknown distribution '" + kind + "' (expected pdf, cdf, delay, preserved or uniform)");
  }

  std::string_view text_;
  NetworkSpec spec_;
  std::vector<SourcePosition> node_pos_, dist_pos_, reliability_pos_;
};

inline SourcePosition position_of_offset(std::string_view text, std::size_t offset) {
  SourcePosition pos{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

inline Delay json_delay(const nlohmann::json& j) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0 || j.get<std::int64_t>() > kMaxHorizon)
    throw ParseError(ParseErrorCode::InvalidDistribution, 0, 0, "delay must be an integer in [0, horizon]");
  return Delay(j.get<std::int64_t>());
}

inline DistSpec json_dist(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1)
    throw ParseError(ParseErrorCode::Syntax, 0, 0, "\"dist\" must be an object with exactly one key");
  const auto& [kind, value] = *j.items().begin();
  auto numbers = [&](const nlohmann::json& v) {
    if (!v.is_array()) throw ParseError(ParseErrorCode::Syntax, 0, 0, "\"" + kind + "\" must be an array");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ParseError(ParseErrorCode::Syntax, 0, 0, "non-numeric entry in \"" + kind + "\"");
      out.push_back(x.get<double>());
    }
    return out;
  };
  if (kind == "pdf") return PdfDist{numbers(value)};
  if (kind == "cdf") return CdfDist{numbers(value)};
  if (kind == "delay") return DelayDist{json_delay(value)};
  if (kind == "preserved") {
    if (!value.is_number()) throw ParseError(ParseErrorCode::Syntax, 0, 0, "\"preserved\" must be a number");
    return PreservedDist{value.get<double>()};
  }
  if (kind == "uniform") {
    if (!value.is_object() || !value.contains("from") || !value.contains("to"))
      throw ParseError(ParseErrorCode::Syntax, 0, 0, "\"uniform\" needs \"from\" and \"to\"");
    return UniformDist{json_delay(value["from"]), json_delay(value["to"])};
  }
  throw ParseError(ParseErrorCode::Syntax, 0, 0, "unknown distribution \"" + kind + "\"");
}

// Structured input carries no per-element positions; semantic errors
// report 0:0.
inline NetworkSpec parse_json_network(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto pos = position_of_offset(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(ParseErrorCode::Syntax, pos.line, pos.column, "malformed JSON");
  }
  auto fail = [](const std::string& detail) -> ParseError {
    return ParseError(ParseErrorCode::Syntax, 0, 0, detail);
  };
  if (!doc.is_object()) throw fail("network document must be an object");
  NetworkSpec spec;
  if (doc.contains("directed")) {
    if (!doc["directed"].is_boolean()) throw fail("\"directed\" must be a boolean");
    spec.directed = doc["directed"].get<bool>();
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw fail("\"nodes\" must be an array");
  for (const auto& n : doc["nodes"]) {
    if (!n.is_string()) throw fail("node ids must be strings");
    spec.nodes.push_back(n.get<std::string>());
  }
  std::vector<SourcePosition> none_nodes(spec.nodes.size()), none_edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw fail("\"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("dist"))
        throw fail("each edge needs \"from\", \"to\" and \"dist\"");
      if (!e["from"].is_string() || !e["to"].is_string()) throw fail("edge endpoints must be strings");
      EdgeSpec edge{e["from"].get<std::string>(), e["to"].get<std::string>(), json_dist(e["dist"]),
                    std::nullopt, {}, {}};
      if (e.contains("reliability")) {
        if (!e["reliability"].is_number()) throw fail("\"reliability\" must be a number");
        edge.reliability = e["reliability"].get<double>();
      }
      spec.edges.push_back(std::move(edge));
    }
  }
  none_edges.resize(spec.edges.size());
  validate(spec, none_nodes, none_edges, none_edges);
  return spec;
}

}  // namespace detail

/// Parses either format; JSON is recognized by its leading '{'.
inline NetworkSpec parse_network(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return detail::parse_json_network(text);
  return detail::TextNetworkParser(text).parse();
}

/// Connectivity matrix in node declaration order: noDelay diagonal, allLost
/// for missing links, undirected edges mirrored.
inline NetworkMatrix to_matrix(const NetworkSpec& spec) {
  const std::size_t n = spec.nodes.size();
  std::map<std::pair<std::size_t, std::size_t>, LatencyDistribution> links;
  for (const auto& edge : spec.edges) {
    auto i = detail::node_index(spec, edge.from, edge.from_pos);
    auto j = detail::node_index(spec, edge.to, edge.to_pos);
    auto ld = edge_distribution(edge);
    links[{i, j}] = ld;
    if (!spec.directed) links[{j, i}] = ld;
  }
  return connectivity_matrix(n, [&](std::size_t i, std::size_t j) {
    auto it = links.find({i, j});
    return it == links.end() ? all_lost() : it->second;
  });
}

}  // namespace dq
