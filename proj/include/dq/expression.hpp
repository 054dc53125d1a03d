#pragma once

// A small expression language over latency distributions.
//
//   expr    := seq (('\/' | '/\') expr)?          firstToFinish / lastToFinish
//   seq     := primary (';' seq)?                 after
//   primary := 'delay' '(' INT ')'
//            | 'preserved' '(' NUM ')'
//            | 'pdf' '[' NUM,* ']' | 'cdf' '[' NUM,* ']'
//            | 'allLost' | 'noDelay'
//            | 'failover' '(' INT ',' expr ',' expr ')'
//            | 'retransmit' '(' INT ',' expr ',' expr ')'
//            | '(' expr ')'
//
// ';' binds tighter than '\/' and '/\'; all three are right-associative.

#include <charconv>
#include <memory>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "dq/bounds.hpp"
#include "dq/completion.hpp"
#include "dq/detail/scanner.hpp"
#include "dq/latency.hpp"
#include "dq/parse_error.hpp"
#include "dq/simulate.hpp"

namespace dq {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct DelayAtom {
  Delay delay;
};
struct PreservedAtom {
  double probability;
};
struct PdfAtom {
  std::vector<double> values;
};
struct CdfAtom {
  std::vector<double> values;
};
struct AllLostAtom {};
struct NoDelayAtom {};

enum class BinaryOp { After, FirstToFinish, LastToFinish };

struct BinaryExpr {
  BinaryOp op;
  ExprPtr lhs, rhs;
};
struct FailoverExpr {
  Delay deadline;
  ExprPtr attempt, fallback;
};
struct RetransmitExpr {
  Delay deadline;
  ExprPtr first, second;
};

struct Expr {
  std::variant<DelayAtom, PreservedAtom, PdfAtom, CdfAtom, AllLostAtom, NoDelayAtom, BinaryExpr,
               FailoverExpr, RetransmitExpr>
      node;
};

template <class Node>
ExprPtr make_expr(Node node) {
  return std::make_shared<const Expr>(Expr{std::move(node)});
}

inline bool operator==(const Expr& a, const Expr& b);

namespace detail {
inline bool same(const ExprPtr& a, const ExprPtr& b) { return a && b ? *a == *b : a == b; }
}  // namespace detail

inline bool operator==(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, DelayAtom>) return x.delay == y.delay;
        else if constexpr (std::is_same_v<T, PreservedAtom>) return x.probability == y.probability;
        else if constexpr (std::is_same_v<T, PdfAtom> || std::is_same_v<T, CdfAtom>) return x.values == y.values;
        else if constexpr (std::is_same_v<T, BinaryExpr>)
          return x.op == y.op && detail::same(x.lhs, y.lhs) && detail::same(x.rhs, y.rhs);
        else if constexpr (std::is_same_v<T, FailoverExpr>)
          return x.deadline == y.deadline && detail::same(x.attempt, y.attempt) &&
                 detail::same(x.fallback, y.fallback);
        else if constexpr (std::is_same_v<T, RetransmitExpr>)
          return x.deadline == y.deadline && detail::same(x.first, y.first) &&
                 detail::same(x.second, y.second);
        else return true;
      },
      a.node);
}

namespace detail {

inline std::string shortest_repr(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

inline std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + shortest_repr(values[i]);
  return out;
}

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view text) : scan_(text) {}

  ExprPtr parse() {
    auto e = expr();
    scan_.skip_space();
    if (!scan_.at_end()) scan_.fail(ParseErrorCode::Syntax, "unexpected trailing input" + scan_.found());
    return e;
  }

 private:
  ExprPtr expr() {
    auto lhs = seq();
    scan_.skip_space();
    if (scan_.accept("\\/")) return make_expr(BinaryExpr{BinaryOp::FirstToFinish, lhs, expr()});
    if (scan_.accept("/\\")) return make_expr(BinaryExpr{BinaryOp::LastToFinish, lhs, expr()});
    return lhs;
  }

  ExprPtr seq() {
    auto lhs = primary();
    scan_.skip_space();
    if (scan_.accept(";")) return make_expr(BinaryExpr{BinaryOp::After, lhs, seq()});
    return lhs;
  }

  ExprPtr primary() {
    scan_.skip_space();
    if (scan_.accept("(")) {
      auto e = expr();
      scan_.skip_space();
      scan_.expect(")");
      return e;
    }
    std::size_t line = scan_.line(), column = scan_.column();
    auto name = scan_.identifier();
    if (name == "delay") {
      open("(");
      auto d = delay();
      close(")");
      return make_expr(DelayAtom{d});
    }
    if (name == "preserved") {
      open("(");
      scan_.skip_space();
      std::size_t l = scan_.line(), c = scan_.column();
      double p = scan_.number();
      if (!(p >= 0.0 && p <= 1.0))
        throw ParseError(ParseErrorCode::InvalidProbability, l, c, "probability outside [0,1]: " + shortest_repr(p));
      close(")");
      return make_expr(PreservedAtom{p});
    }
    if (name == "pdf") return make_expr(PdfAtom{values()});
    if (name == "cdf") return make_expr(CdfAtom{values()});
    if (name == "allLost") return make_expr(AllLostAtom{});
    if (name == "noDelay") return make_expr(NoDelayAtom{});
    if (name == "failover" || name == "retransmit") {
      open("(");
      auto d = delay();
      close(",");
      auto a = expr();
      close(",");
      auto b = expr();
      close(")");
      if (name == "failover") return make_expr(FailoverExpr{d, a, b});
      return make_expr(RetransmitExpr{d, a, b});
    }
    if (name.empty()) throw ParseError(ParseErrorCode::Syntax, line, column, "expected an expression" + scan_.found());
    throw ParseError(ParseErrorCode::Syntax, line, column, "unknown name '" + name + "'");
  }

  void open(std::string_view token) {
    scan_.skip_space();
    scan_.expect(token);
  }
  void close(std::string_view token) { open(token); }

  Delay delay() {
    scan_.skip_space();
    std::size_t l = scan_.line(), c = scan_.column();
    auto ticks = scan_.integer();
    try {
      return Delay(ticks);
    } catch (const std::exception& e) {
      throw ParseError(ParseErrorCode::InvalidDistribution, l, c, e.what());
    }
  }

  std::vector<double> values() {
    open("[");
    std::vector<double> out;
    scan_.skip_space();
    if (scan_.accept("]")) return out;
    do {
      scan_.skip_space();
      std::size_t l = scan_.line(), c = scan_.column();
      double x = scan_.number();
      if (!(x >= 0.0 && x <= 1.0))
        throw ParseError(ParseErrorCode::InvalidProbability, l, c, "value outside [0,1]: " + shortest_repr(x));
      out.push_back(x);
      scan_.skip_space();
    } while (scan_.accept(","));
    scan_.expect("]");
    return out;
  }

  Scanner scan_;
};

}  // namespace detail

inline ExprPtr parse_expression(std::string_view text) {
  return detail::ExpressionParser(text).parse();
}

/// Fully parenthesized rendering; parses back to an equal tree.
inline std::string to_string(const Expr& e) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DelayAtom>) return "delay(" + std::to_string(x.delay.ticks()) + ")";
        else if constexpr (std::is_same_v<T, PreservedAtom>)
          return "preserved(" + detail::shortest_repr(x.probability) + ")";
        else if constexpr (std::is_same_v<T, PdfAtom>) return "pdf[" + detail::join(x.values) + "]";
        else if constexpr (std::is_same_v<T, CdfAtom>) return "cdf[" + detail::join(x.values) + "]";
        else if constexpr (std::is_same_v<T, AllLostAtom>) return "allLost";
        else if constexpr (std::is_same_v<T, NoDelayAtom>) return "noDelay";
        else if constexpr (std::is_same_v<T, BinaryExpr>) {
          const char* op = x.op == BinaryOp::After ? " ; " : x.op == BinaryOp::FirstToFinish ? " \\/ " : " /\\ ";
          return "(" + to_string(*x.lhs) + op + to_string(*x.rhs) + ")";
        } else if constexpr (std::is_same_v<T, FailoverExpr>)
          return "failover(" + std::to_string(x.deadline.ticks()) + ", " + to_string(*x.attempt) + ", " +
                 to_string(*x.fallback) + ")";
        else
          return "retransmit(" + std::to_string(x.deadline.ticks()) + ", " + to_string(*x.first) + ", " +
                 to_string(*x.second) + ")";
      },
      e.node);
}

/// Distribution denoted by a literal atom.
inline LatencyDistribution atom_distribution(const Expr& e) {
  return std::visit(
      [](const auto& x) -> LatencyDistribution {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DelayAtom>) return delay_of(x.delay);
        else if constexpr (std::is_same_v<T, PreservedAtom>) return preserved(Probability(x.probability));
        else if constexpr (std::is_same_v<T, PdfAtom>) return from_pdf(Series<double>(x.values));
        else if constexpr (std::is_same_v<T, CdfAtom>) return from_cdf(Series<double>(x.values));
        else if constexpr (std::is_same_v<T, AllLostAtom>) return all_lost();
        else if constexpr (std::is_same_v<T, NoDelayAtom>) return no_delay();
        else throw std::invalid_argument("not an atom");
      },
      e.node);
}

// How a literal distribution is viewed in a given completion-time domain.
template <class T>
struct AtomProjection;

template <>
struct AtomProjection<LatencyDistribution> {
  static LatencyDistribution project(const LatencyDistribution& ld) { return ld; }
};
template <>
struct AtomProjection<Earliest> {
  static Earliest project(const LatencyDistribution& ld) { return earliest_of(ld); }
};
template <>
struct AtomProjection<Latest> {
  static Latest project(const LatencyDistribution& ld) { return latest_of(ld); }
};

/// Folds the tree through the operators of `T`. Delay, allLost and noDelay
/// literals use the domain's own constructors; other literals are projected
/// from their distribution.
template <TimeToCompletion T>
T evaluate(const Expr& e) {
  return std::visit(
      [](const auto& x) -> T {
        using N = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<N, DelayAtom>) return completion<T>::delay(x.delay);
        else if constexpr (std::is_same_v<N, AllLostAtom>) return completion<T>::all_lost();
        else if constexpr (std::is_same_v<N, NoDelayAtom>) return completion<T>::no_delay();
        else if constexpr (std::is_same_v<N, BinaryExpr>) {
          T a = evaluate<T>(*x.lhs);
          T b = evaluate<T>(*x.rhs);
          switch (x.op) {
            case BinaryOp::After: return after(a, b);
            case BinaryOp::FirstToFinish: return first_to_finish(a, b);
            case BinaryOp::LastToFinish: return last_to_finish(a, b);
          }
          throw std::invalid_argument("unknown operator");
        } else if constexpr (std::is_same_v<N, FailoverExpr>)
          return failover(x.deadline, evaluate<T>(*x.attempt), evaluate<T>(*x.fallback));
        else if constexpr (std::is_same_v<N, RetransmitExpr>)
          return retransmit(x.deadline, evaluate<T>(*x.first), evaluate<T>(*x.second));
        else return AtomProjection<T>::project(atom_distribution(Expr{x}));
      },
      e.node);
}

/// One Monte-Carlo draw of the expression: every atom occurrence is sampled
/// independently, left operand before right.
inline SampleOutcome simulate_expression(const Expr& e, Rng& rng) {
  return std::visit(
      [&](const auto& x) -> SampleOutcome {
        using N = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<N, BinaryExpr>) {
          auto a = simulate_expression(*x.lhs, rng);
          auto b = simulate_expression(*x.rhs, rng);
          OpTag tag = x.op == BinaryOp::After           ? OpTag::After
                      : x.op == BinaryOp::FirstToFinish ? OpTag::FirstToFinish
                                                        : OpTag::LastToFinish;
          return simulate_op({tag, Delay{}}, a, b);
        } else if constexpr (std::is_same_v<N, FailoverExpr>) {
          auto a = simulate_expression(*x.attempt, rng);
          auto b = simulate_expression(*x.fallback, rng);
          return simulate_op({OpTag::Failover, x.deadline}, a, b);
        } else if constexpr (std::is_same_v<N, RetransmitExpr>) {
          auto a = simulate_expression(*x.first, rng);
          auto b = simulate_expression(*x.second, rng);
          return simulate_op({OpTag::Retransmit, x.deadline}, a, b);
        } else {
          return sample_ld(atom_distribution(Expr{x}), rng);
        }
      },
      e.node);
}

}  // namespace dq
