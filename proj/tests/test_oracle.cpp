#include <gtest/gtest.h>

#include "autobid/oracle.hpp"
#include "support/corpus.hpp"

using namespace autobid;

namespace {

Instance e1() { return Instance({{Rational(4), Rational(1)}, {Rational(1), Rational(2)}}); }
const Targets kUnit(Rational(1), Rational(1));
const Targets kHalf(Rational(1, 2), Rational(1));

}  // namespace

TEST(RawFeasibility, WorkedInstance) {
  const auto k1 = raw_condition_feasible(e1(), kUnit, 1, TieBreak::Bidder1Wins);
  ASSERT_TRUE(k1.feasible);
  ASSERT_TRUE(k1.witness);
  EXPECT_TRUE(check_condition_nk(e1(), kUnit, *k1.witness, 1).all_hold());

  const auto k0 = raw_condition_feasible(e1(), kUnit, 0, TieBreak::Bidder1Wins);
  EXPECT_FALSE(k0.feasible);
  EXPECT_FALSE(k0.witness);

  EXPECT_FALSE(raw_condition_feasible(e1(), kHalf, 2, TieBreak::Bidder1Wins).feasible);
  EXPECT_THROW(raw_condition_feasible(e1(), kUnit, 3, TieBreak::Bidder1Wins), RangeError);
}

TEST(RawFeasibility, BidderTwoBudgetCapsMu1BelowOne) {
  // At k = 0 bidder 2 wins both and pays mu1 * 5 <= 3, so mu1 <= 3/5.
  const auto sys = raw_condition_system(e1(), kUnit, 0, TieBreak::Bidder1Wins);
  EXPECT_FALSE(sys.satisfied_by(Rational(3, 5), Rational(100)));
  EXPECT_FALSE(sys.solve());
}

TEST(Crosscheck, WorkedInstance) {
  const auto a = crosscheck_uniform(e1(), kUnit);
  EXPECT_TRUE(a.agree);
  EXPECT_EQ(a.equilibria, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(a.rows.size(), 6u);
  EXPECT_FALSE(a.counterexample);
  const auto b = crosscheck_uniform(e1(), kHalf);
  EXPECT_TRUE(b.agree);
  EXPECT_EQ(b.equilibria, (std::vector<std::size_t>{0, 1}));
}

TEST(Crosscheck, AgreesOnSeededCorpus) {
  for (const auto& c : corpus::pair_corpus(150, 77)) {
    const auto report = crosscheck_uniform(c.normalized.instance, c.targets);
    EXPECT_TRUE(report.agree) << "seed " << c.seed;
    for (const auto& row : report.rows) EXPECT_TRUE(row.agree());
  }
}
