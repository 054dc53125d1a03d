#include <gtest/gtest.h>

#include "dq/commands.hpp"
#include "dq/expression.hpp"
#include "support/expressions.hpp"

namespace dq {
namespace {

using testing::Gen;

ExprPtr d(std::int64_t t) { return make_expr(DelayAtom{Delay(t)}); }
ExprPtr bin(BinaryOp op, ExprPtr a, ExprPtr b) { return make_expr(BinaryExpr{op, std::move(a), std::move(b)}); }

void expect_error(std::string_view text, ParseErrorCode code, std::size_t line, std::size_t column) {
  try {
    parse_expression(text);
    ADD_FAILURE() << "no error for " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
  }
}

TEST(Parse, SequenceBindsTighter) {
  auto e = parse_expression("delay(1) ; delay(2) \\/ delay(4)");
  EXPECT_EQ(*e, *bin(BinaryOp::FirstToFinish, bin(BinaryOp::After, d(1), d(2)), d(4)));
  auto f = parse_expression("delay(4) /\\ delay(1) ; delay(2)");
  EXPECT_EQ(*f, *bin(BinaryOp::LastToFinish, d(4), bin(BinaryOp::After, d(1), d(2))));
}

TEST(Parse, RightAssociative) {
  auto e = parse_expression("delay(1) \\/ delay(2) \\/ delay(3)");
  EXPECT_EQ(*e, *bin(BinaryOp::FirstToFinish, d(1), bin(BinaryOp::FirstToFinish, d(2), d(3))));
  auto f = parse_expression("delay(1) ; delay(2) ; delay(3)");
  EXPECT_EQ(*f, *bin(BinaryOp::After, d(1), bin(BinaryOp::After, d(2), d(3))));
  auto g = parse_expression("delay(1) \\/ delay(2) /\\ delay(3)");
  EXPECT_EQ(*g, *bin(BinaryOp::FirstToFinish, d(1), bin(BinaryOp::LastToFinish, d(2), d(3))));
}

TEST(Parse, Parentheses) {
  auto e = parse_expression("(delay(1) \\/ delay(2)) ; delay(3)");
  EXPECT_EQ(*e, *bin(BinaryOp::After, bin(BinaryOp::FirstToFinish, d(1), d(2)), d(3)));
}

TEST(Parse, Functions) {
  auto e = parse_expression("failover(2, delay(1), preserved(0.5))");
  EXPECT_EQ(*e, *make_expr(FailoverExpr{Delay(2), d(1), make_expr(PreservedAtom{0.5})}));
  auto r = parse_expression("retransmit(0, allLost, noDelay)");
  EXPECT_EQ(*r, *make_expr(RetransmitExpr{Delay(0), make_expr(AllLostAtom{}), make_expr(NoDelayAtom{})}));
}

TEST(Parse, Literals) {
  EXPECT_EQ(*parse_expression("pdf[0.5, 0.25]"), *make_expr(PdfAtom{{0.5, 0.25}}));
  EXPECT_EQ(*parse_expression("cdf[]"), *make_expr(CdfAtom{{}}));
  EXPECT_EQ(*parse_expression("  noDelay\n"), *make_expr(NoDelayAtom{}));
}

TEST(Parse, Errors) {
  expect_error("", ParseErrorCode::Syntax, 1, 1);
  expect_error("delay(1) ;", ParseErrorCode::Syntax, 1, 11);
  expect_error("delay(1.5)", ParseErrorCode::Syntax, 1, 7);
  expect_error("delay(-1)", ParseErrorCode::InvalidDistribution, 1, 7);
  expect_error("preserved(1.5)", ParseErrorCode::InvalidProbability, 1, 11);
  expect_error("pdf[0.5, 2]", ParseErrorCode::InvalidProbability, 1, 10);
  expect_error("delay(1) delay(2)", ParseErrorCode::Syntax, 1, 10);
  expect_error("frob(1)", ParseErrorCode::Syntax, 1, 1);
  expect_error("delay(1) \\/\n  (delay(2)", ParseErrorCode::Syntax, 2, 12);
}

TEST(Parse, ErrorMessageNamesPosition) {
  try {
    parse_expression("delay(1) ;");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("syntax at 1:11:", 0), 0u) << e.what();
  }
}

TEST(Evaluate, Examples) {
  EXPECT_EQ(evaluate<LatencyDistribution>(*parse_expression("delay(2) ; delay(3)")), delay_of(Delay(5)));
  EXPECT_EQ(evaluate<LatencyDistribution>(*parse_expression("preserved(0.5) \\/ preserved(0.5)")),
            preserved(Probability(0.75)));
  EXPECT_EQ(evaluate<LatencyDistribution>(*parse_expression("failover(1, pdf[0.5,0.5], delay(0))")),
            from_pdf(Series<double>{0.5, 0.5}));
}

TEST(Evaluate, Bounds) {
  auto e = parse_expression("delay(1) \\/ delay(4)");
  EXPECT_EQ(evaluate<Latest>(*e), Latest{SometimeOrNever::sometime(Delay(1))});
  EXPECT_EQ(evaluate<Earliest>(*e), Earliest{SometimeOrNever::sometime(Delay(1))});
  EXPECT_EQ(evaluate<Latest>(*parse_expression("preserved(0.5)")), Latest{SometimeOrNever::never()});
}

TEST(Evaluate, InvalidCdfLiteral) {
  EXPECT_THROW(evaluate<LatencyDistribution>(*parse_expression("cdf[0.5, 0.2]")), DomainError);
}

TEST(RoundTrip, RenderedTreesParseBack) {
  Gen g(81);
  for (int i = 0; i < 300; ++i) {
    auto e = testing::random_expr(g, 6);
    auto text = to_string(*e);
    EXPECT_EQ(*parse_expression(text), *e) << text;
  }
}

TEST(BoundRoutes, AgreeOnRandomTrees) {
  Gen g(82);
  for (int i = 0; i < 500; ++i) {
    auto text = to_string(*testing::random_expr(g, 6));
    auto report = bounds_report(text);
    EXPECT_TRUE(report.agree()) << text << "\n  distribution " << report.earliest_from_distribution << ", "
                                << report.latest_from_distribution << "\n  bounds " << report.earliest_from_bounds
                                << ", " << report.latest_from_bounds;
  }
}

TEST(Simulate, MatchesEvaluation) {
  Gen g(83);
  for (int i = 0; i < 20; ++i) {
    auto e = testing::random_expr(g, 3);
    auto analytic = evaluate<LatencyDistribution>(*e);
    Rng rng(RngSeed{static_cast<std::uint64_t>(i)});
    std::vector<SampleOutcome> draws;
    for (int k = 0; k < 10000; ++k) draws.push_back(simulate_expression(*e, rng));
    auto empirical = empirical_distribution(draws, Delay(200));
    std::size_t n = std::max(analytic.pdf().size(), empirical.pdf().size());
    for (std::size_t t = 0; t < n; ++t) {
      double a = t < analytic.pdf().size() ? analytic.pdf()[t] : 0.0;
      double b = t < empirical.pdf().size() ? empirical.pdf()[t] : 0.0;
      EXPECT_NEAR(a, b, 0.02) << to_string(*e) << " at " << t;
    }
  }
}

}  // namespace
}  // namespace dq
