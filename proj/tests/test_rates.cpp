#include "hqr/rates.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hqr;

TEST(Attempts, ClosedFormsForSmallNesting) {
  for (double p : {0.05, 0.3, 0.6427, 0.9}) {
    EXPECT_NEAR(z_attempts(0, p), 1.0 / p, 1e-9 / p);
    const double two = 2.0 / p - 1.0 / (p * (2.0 - p));
    EXPECT_NEAR(z_attempts(1, p), two, 1e-9 * two);
  }
}

TEST(Attempts, FormsAgreeWhereLiteralSumIsStable) {
  for (int n = 0; n <= 3; ++n) {
    for (double p : {0.3, 0.6427}) {
      EXPECT_NEAR(z_attempts(n, p, ZForm::alternating), z_attempts(n, p), 1e-8) << n << " " << p;
    }
  }
  // The unsigned sum overcounts once more than one segment is involved.
  EXPECT_GT(z_attempts(1, 0.5, ZForm::unsigned_sum), z_attempts(1, 0.5));
  EXPECT_THROW(z_attempts(11, 0.5, ZForm::alternating), std::invalid_argument);
}

TEST(Attempts, CertainSuccessIsOneRound) {
  for (int n = 0; n <= 30; n += 5) EXPECT_EQ(z_attempts(n, 1.0), 1.0);
  EXPECT_THROW(z_attempts(2, 0.0), std::invalid_argument);
  EXPECT_THROW(z_attempts(-1, 0.5), std::invalid_argument);
}

TEST(Attempts, GrowsWithNesting) {
  double prev = 0.0;
  for (int n = 0; n <= 12; ++n) {
    const double z = z_attempts(n, 0.2);
    EXPECT_GT(z, prev);
    prev = z;
  }
}

TEST(EffectiveProbability, Recursion) {
  EXPECT_NEAR(effective_probability(0.642697, 0.610342), 0.310522, 1e-6);
  EXPECT_NEAR(effective_probability(1.0, 1.0), 1.0, 1e-15);
  EXPECT_THROW(effective_probability(0.0, 0.5), std::invalid_argument);
}

TEST(Config, Validation) {
  RepeaterConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.nesting_level(), 1);
  EXPECT_NEAR(c.attempt_time_s(), 5e-5, 1e-18);
  c.total_span_km = 15.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.total_span_km = 2.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = RepeaterConfig{};
  c.scheme = Scheme::homodyne;
  c.d = 5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = RepeaterConfig{};
  c.alpha = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Predict, UsdTenKilometres) {
  RepeaterConfig c;
  c.purification_rounds = 2;
  const auto r = predict(c);
  ASSERT_EQ(r.rounds.size(), 3u);
  EXPECT_NEAR(r.initial_probability, 0.642697, 1e-6);
  EXPECT_NEAR(r.rounds[0].fidelity, 0.749332, 1e-6);
  EXPECT_NEAR(r.rounds[1].fidelity, 0.919973, 1e-6);
  EXPECT_NEAR(r.rounds[2].fidelity, 0.992796, 1e-6);
  EXPECT_NEAR(r.per_round[0].rate_hz, 10175.3, 0.1);
  EXPECT_NEAR(r.rate_hz, r.per_round[2].rate_hz, 1e-9);
  EXPECT_NEAR(r.final_fidelity_bound, std::pow(r.rounds[2].fidelity, 2), 1e-12);
}

TEST(Predict, HomodyneSchemeRuns) {
  RepeaterConfig c;
  c.scheme = Scheme::homodyne;
  c.alpha = 1.0;
  c.purification_rounds = 1;
  const auto r = predict(c);
  EXPECT_NEAR(r.initial_probability, 0.496076, 2e-6);
  EXPECT_GT(r.rounds[1].fidelity, r.rounds[0].fidelity);
}

TEST(Predict, PublishedWeightsOnlyShiftSubleadingTerms) {
  RepeaterConfig gram;
  gram.purification_rounds = 1;
  RepeaterConfig printed = gram;
  printed.weights = WeightModel::published;
  const auto a = predict(gram);
  const auto b = predict(printed);
  EXPECT_NEAR(a.rounds[0].fidelity, b.rounds[0].fidelity, 1e-12);
  EXPECT_GT(std::abs(a.rounds[1].fidelity - b.rounds[1].fidelity), 1e-4);
}

TEST(MonteCarlo, DeterministicForSeedAndShards) {
  const AttemptModel m{2, 0.3, {}};
  const auto a = monte_carlo_attempts(m, 20000, 42, 4);
  const auto b = monte_carlo_attempts(m, 20000, 42, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.standard_error, b.standard_error);
  const auto c = monte_carlo_attempts(m, 20000, 43, 4);
  EXPECT_NE(a.mean, c.mean);
  EXPECT_EQ(a.trials, 20000u);
}

TEST(MonteCarlo, CertainSuccess) {
  const auto e = monte_carlo_attempts(AttemptModel{3, 1.0, {}}, 1000, 7);
  EXPECT_EQ(e.mean, 1.0);
  EXPECT_EQ(e.standard_error, 0.0);
}

TEST(MonteCarlo, SingleTrialAllowed) {
  const auto e = monte_carlo_attempts(AttemptModel{0, 0.5, {}}, 1, 1);
  EXPECT_GE(e.mean, 1.0);
  EXPECT_EQ(e.trials, 1u);
}

TEST(MonteCarlo, PurificationRaisesAttempts) {
  const auto plain = monte_carlo_attempts(AttemptModel{1, 0.5, {}}, 50000, 9, 2);
  const auto purified = monte_carlo_attempts(AttemptModel{1, 0.5, {0.8}}, 50000, 9, 2);
  EXPECT_GT(purified.mean, plain.mean + 10 * purified.standard_error);
}

TEST(MonteCarlo, RejectsBadInput) {
  EXPECT_THROW(monte_carlo_attempts(AttemptModel{0, 0.5, {}}, 0, 1), std::invalid_argument);
  EXPECT_THROW(monte_carlo_attempts(AttemptModel{0, 0.5, {}}, 10, 1, 0), std::invalid_argument);
  EXPECT_THROW(monte_carlo_attempts(AttemptModel{0, 1.5, {}}, 10, 1), std::invalid_argument);
  EXPECT_THROW(monte_carlo_attempts(AttemptModel{0, 0.5, {0.0}}, 10, 1), std::invalid_argument);
}

TEST(Tables, EveryTableHasCellsAndStatusLabels) {
  for (auto id : {TableId::I, TableId::II, TableId::III, TableId::IV, TableId::V}) {
    const auto t = reproduce_table(id);
    EXPECT_GT(t.cells.size(), 30u) << to_string(id);
    for (const auto& c : t.cells) {
      EXPECT_TRUE(std::isfinite(c.computed));
      EXPECT_FALSE(c.printed_text.empty());
    }
  }
}

TEST(Tables, KnownTyposAreFlagged) {
  const auto t = reproduce_table(TableId::I);
  int typos = 0;
  for (const auto& c : t.cells) {
    if (c.quantity == "rate_hz" && c.rounds == 3) EXPECT_EQ(c.status, CellStatus::known_typo);
    if (c.status == CellStatus::known_typo) ++typos;
  }
  EXPECT_GT(typos, 0);
}

TEST(Tables, ParseIdentifiers) {
  EXPECT_EQ(parse_table_id("III"), TableId::III);
  EXPECT_EQ(parse_table_id("5"), TableId::V);
  EXPECT_FALSE(parse_table_id("VI").has_value());
  EXPECT_STREQ(to_string(CellStatus::known_typo), "known-typo");
}
