#include <gtest/gtest.h>

#include "dq/completion.hpp"
#include "dq/latency.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

namespace dq {
namespace {

using testing::Gen;

LatencyDistribution pdf(std::initializer_list<double> values) { return from_pdf(Series<double>(values)); }

void expect_pdf(const LatencyDistribution& ld, std::initializer_list<double> expected, double tol = 1e-12) {
  Series<double> want(expected);
  ASSERT_EQ(ld.pdf().size(), want.size()) << ld;
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(ld.pdf()[i], want[i], tol) << "bin " << i << " of " << ld;
}

TEST(Canonicalize, ClipsAtUnitMass) { expect_pdf(canonicalize(Series<double>{0.6, 0.6}), {0.6, 0.4}); }

TEST(Canonicalize, DropsTrailingZeros) { expect_pdf(canonicalize(Series<double>{0.5, 0.0, 0.0}), {0.5}); }

TEST(Canonicalize, EmptyBecomesAllLost) { EXPECT_EQ(canonicalize(Series<double>{}), all_lost()); }

TEST(Canonicalize, RejectsNegative) { EXPECT_THROW(canonicalize(Series<double>{0.5, -0.1}), DomainError); }

TEST(Canonicalize, SnapsRoundingResidue) { expect_pdf(canonicalize(Series<double>{0.5, 1e-17, -1e-17}), {0.5}); }

TEST(Canonicalize, OutputIsCanonical) {
  Gen g(21);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> raw(g.size(0, 12));
    for (auto& x : raw) x = g.chance(0.3) ? 0.0 : g.real(0.0, 0.6);
    EXPECT_TRUE(canonicalize(Series<double>(raw)).is_canonical());
  }
}

TEST(Construction, FromCdf) {
  expect_pdf(from_cdf(Series<double>{0.5, 1.0}), {0.5, 0.5});
  EXPECT_THROW(from_cdf(Series<double>{0.5, 0.2}), DomainError);
  EXPECT_THROW(from_cdf(Series<double>{0.5, 1.5}), DomainError);
}

TEST(Construction, FromComplementOfCdf) {
  expect_pdf(from_complement_of_cdf(Series<double>{0.5, 0.0}), {0.5, 0.5});
  EXPECT_THROW(from_complement_of_cdf(Series<double>{0.2, 0.5}), DomainError);
}

TEST(Construction, FromPdfKeepsCanonicalInput) { expect_pdf(pdf({0, 0, 1}), {0, 0, 1}); }

TEST(Construction, Constants) {
  EXPECT_EQ(delay_of(Delay(0)), no_delay());
  expect_pdf(delay_of(Delay(2)), {0, 0, 1});
  EXPECT_EQ(preserved(Probability(0.0)), all_lost());
  EXPECT_EQ(LatencyDistribution{}, all_lost());
}

TEST(Cdf, Examples) {
  EXPECT_EQ(cdf(pdf({0.5, 0.5})), (Series<double>{0.5, 1.0}));
  EXPECT_EQ(cdf(no_delay()), Series<double>{1.0});
  EXPECT_EQ(complement_cdf(pdf({0.5, 0.25})), (Series<double>{0.5, 0.25}));
}

TEST(After, Examples) {
  EXPECT_EQ(after(delay_of(Delay(2)), delay_of(Delay(3))), delay_of(Delay(5)));
  auto a = pdf({0.1, 0.4, 0.3});
  EXPECT_EQ(after(a, no_delay()), a);
  EXPECT_EQ(after(a, all_lost()), all_lost());
}

TEST(After, MatchesDoubleSumConvolution) {
  Gen g(22);
  for (int i = 0; i < 200; ++i) {
    auto a = testing::random_ld(g), b = testing::random_ld(g);
    auto expected = from_pdf(Series<double>(testing::brute_convolve(a.pdf().coefficients(), b.pdf().coefficients())));
    EXPECT_LT(ld_distance(after(a, b), expected), 1e-18);
  }
}

TEST(FirstToFinish, Examples) {
  auto a = pdf({0.1, 0.4, 0.3});
  EXPECT_LT(ld_distance(first_to_finish(a, all_lost()), a), 1e-18);
  EXPECT_EQ(first_to_finish(a, no_delay()), no_delay());
  expect_pdf(first_to_finish(preserved(Probability(0.5)), preserved(Probability(0.5))), {0.75});
}

TEST(FirstToFinish, MatchesSurvivalProduct) {
  Gen g(23);
  for (int i = 0; i < 200; ++i) {
    auto a = testing::random_ld(g), b = testing::random_ld(g);
    auto expected = testing::first_to_finish_cdf(a.pdf().coefficients(), b.pdf().coefficients());
    auto got = testing::running_total(first_to_finish(a, b).pdf().coefficients());
    for (std::size_t t = 0; t < expected.size(); ++t) {
      double value = t < got.size() ? got[t] : got.back();
      EXPECT_NEAR(value, expected[t], 1e-12);
    }
  }
}

TEST(FirstToFinish, BothFormulationsAgree) {
  EXPECT_LT(testing::first_to_finish_formulations(24, 300).value, 1e-9);
}

TEST(FirstToFinish, NoWorseThanEitherOperand) {
  Gen g(25);
  for (int i = 0; i < 200; ++i) {
    auto a = testing::random_ld(g), b = testing::random_ld(g);
    EXPECT_TRUE(no_worse_than(first_to_finish(a, b), a));
    EXPECT_TRUE(no_worse_than(a, last_to_finish(a, b)));
  }
}

TEST(LastToFinish, Examples) {
  EXPECT_EQ(last_to_finish(delay_of(Delay(1)), delay_of(Delay(2))), delay_of(Delay(2)));
  auto a = pdf({0.1, 0.4, 0.3});
  EXPECT_LT(ld_distance(last_to_finish(a, no_delay()), a), 1e-18);
  expect_pdf(last_to_finish(preserved(Probability(0.5)), preserved(Probability(0.5))), {0.25});
}

TEST(Laws, MonoidLawsHold) {
  auto worst = testing::monoid_laws(26, 100);
  EXPECT_LT(worst.value, 0.001) << worst.where;
  // The laws hold far more tightly than the similarity threshold.
  EXPECT_LT(worst.value, 1e-20) << worst.where;
}

TEST(Failover, Examples) {
  auto a = pdf({0.2, 0.3, 0.1});
  auto b = pdf({0.5, 0.5});
  EXPECT_EQ(failover(Delay(0), a, b), b);
  EXPECT_EQ(failover(Delay(3), all_lost(), b), after(delay_of(Delay(3)), b));
  expect_pdf(failover(Delay(1), pdf({0.5, 0.5}), no_delay()), {0.5, 0.5});
}

TEST(Failover, ArrivalAtDeadlineGoesToFallback) {
  // Mass at tick 1 is discarded; the fallback starts at tick 1 with the
  // remaining 0.5.
  expect_pdf(failover(Delay(1), pdf({0.5, 0.5}), delay_of(Delay(2))), {0.5, 0, 0, 0.5});
}

TEST(Failover, PadsShortAttemptUpToDeadline) {
  expect_pdf(failover(Delay(3), preserved(Probability(0.4)), no_delay()), {0.4, 0, 0, 0.6});
}

TEST(Failover, Laws) { EXPECT_LT(testing::failover_laws(27, 200).value, 1e-9); }

TEST(Retransmit, Examples) {
  auto a = pdf({0.2, 0.3, 0.1});
  auto b = pdf({0.5, 0.5});
  EXPECT_EQ(retransmit(Delay(0), a, b), first_to_finish(a, b));
  EXPECT_LT(ld_distance(retransmit(Delay(2), a, all_lost()), a), 1e-18);
  EXPECT_LT(ld_distance(retransmit(Delay(2), all_lost(), b), after(delay_of(Delay(2)), b)), 1e-18);
}

TEST(Scale, Examples) {
  auto a = pdf({0.1, 0.4, 0.3});
  EXPECT_EQ(scale_probability(Probability(1.0), a), a);
  expect_pdf(scale_probability(Probability(0.5), no_delay()), {0.5});
  EXPECT_EQ(scale_delay(Delay(2), delay_of(Delay(3))), delay_of(Delay(5)));
}

TEST(Summary, DeadlineAndArrival) {
  EXPECT_EQ(deadline_of(delay_of(Delay(5))), Delay(5));
  EXPECT_DOUBLE_EQ(ultimate_arrival(delay_of(Delay(5))), 1.0);
  EXPECT_EQ(deadline_of(all_lost()), Delay(0));
  EXPECT_DOUBLE_EQ(ultimate_arrival(all_lost()), 0.0);
  EXPECT_EQ(deadline_of(pdf({0.5, 0.25})), Delay(1));
  EXPECT_DOUBLE_EQ(ultimate_arrival(pdf({0.5, 0.25})), 0.75);
}

TEST(NoWorseThan, Examples) {
  Gen g(28);
  for (int i = 0; i < 100; ++i) {
    auto a = testing::random_ld_or_special(g);
    EXPECT_TRUE(no_worse_than(no_delay(), a));
    EXPECT_TRUE(no_worse_than(a, all_lost()));
    EXPECT_TRUE(no_worse_than(a, a));
  }
}

TEST(NoWorseThan, IsPartialOrder) {
  Gen g(29);
  for (int i = 0; i < 300; ++i) {
    auto a = testing::random_ld(g, 4), b = testing::random_ld(g, 4), c = testing::random_ld(g, 4);
    if (no_worse_than(a, b) && no_worse_than(b, a)) { EXPECT_LT(ld_distance(a, b), 1e-9); }
    if (no_worse_than(a, b) && no_worse_than(b, c)) { EXPECT_TRUE(no_worse_than(a, c)); }
  }
}

TEST(Distance, Examples) {
  auto a = pdf({0.1, 0.4, 0.3});
  EXPECT_DOUBLE_EQ(ld_distance(a, a), 0.0);
  EXPECT_DOUBLE_EQ(ld_distance(no_delay(), all_lost()), 1.0);
  EXPECT_DOUBLE_EQ(ld_distance(pdf({0.5}), pdf({0.5, 0.5})), 0.25);
  EXPECT_EQ(unit_of<LatencyDistribution>(), no_delay());
  EXPECT_EQ(null_of<LatencyDistribution>(), all_lost());
}

TEST(Closure, EveryOperatorYieldsCanonicalOutput) {
  Gen g(30);
  for (int i = 0; i < 300; ++i) {
    auto a = testing::random_ld_or_special(g), b = testing::random_ld_or_special(g);
    Delay t(g.integer(0, 10));
    EXPECT_TRUE(after(a, b).is_canonical());
    EXPECT_TRUE(first_to_finish(a, b).is_canonical());
    EXPECT_TRUE(last_to_finish(a, b).is_canonical());
    EXPECT_TRUE(failover(t, a, b).is_canonical());
    EXPECT_TRUE(retransmit(t, a, b).is_canonical());
  }
}

TEST(Horizon, SequentialCompositionPastHorizonThrows) {
  auto far = delay_of(Delay(kMaxHorizon));
  EXPECT_THROW(after(far, delay_of(Delay(1))), HorizonError);
  EXPECT_NO_THROW(after(far, no_delay()));
}

}  // namespace
}  // namespace dq
