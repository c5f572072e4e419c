#include "seqform/treeplex.h"

#include <gtest/gtest.h>

#include <stdexcept>

namespace seqform {
namespace {

Treeplex two_level() { return Treeplex({{2, 0}, {2, 2}}); }

TEST(Treeplex, IndexingTwoLevel) {
  Treeplex tp = two_level();
  EXPECT_EQ(tp.dim(), 4);
  EXPECT_EQ(tp.simplex_count(), 2);
  EXPECT_EQ(tp.first_index(0), 1);
  EXPECT_EQ(tp.first_index(1), 3);
  EXPECT_EQ(tp.parent(0), 0);
  EXPECT_EQ(tp.parent(1), 2);
  EXPECT_EQ(tp.owner(1), 0);
  EXPECT_EQ(tp.owner(2), 0);
  EXPECT_EQ(tp.owner(3), 1);
  EXPECT_EQ(tp.owner(4), 1);
  ASSERT_EQ(tp.children(2).size(), 1u);
  EXPECT_EQ(tp.children(2)[0], 1);
  EXPECT_TRUE(tp.children(1).empty());
  ASSERT_EQ(tp.root_simplexes().size(), 1u);
  EXPECT_EQ(tp.root_simplexes()[0], 0);
}

TEST(Treeplex, RejectsMalformedSpecs) {
  EXPECT_THROW(Treeplex(std::vector<SimplexSpec>{}), std::invalid_argument);
  EXPECT_THROW(Treeplex({{0, 0}}), std::invalid_argument);
  EXPECT_THROW(Treeplex({{2, -1}}), std::invalid_argument);
  // A simplex may not hang below its own indices or below later ones.
  EXPECT_THROW(Treeplex({{2, 1}}), std::invalid_argument);
  EXPECT_THROW(Treeplex({{2, 0}, {2, 4}}), std::invalid_argument);
}

TEST(Treeplex, ValidationMessages) {
  Treeplex tp = two_level();
  EXPECT_EQ(realization_violation(tp, {0.5, 0.5, 0.25, 0.25}), "");
  EXPECT_TRUE(is_realization(tp, {1.0, 0.0, 0.0, 0.0}));
  EXPECT_NE(realization_violation(tp, {0.5, 0.5, 0.25}), "");
  EXPECT_NE(realization_violation(tp, {-0.1, 1.1, 0.55, 0.55}), "");
  EXPECT_NE(realization_violation(tp, {0.5, 0.5, 0.5, 0.25}), "");
  // Within tolerance passes, beyond fails.
  EXPECT_TRUE(is_realization(tp, {0.5, 0.5, 0.25 + 5e-10, 0.25}));
  EXPECT_FALSE(is_realization(tp, {0.5, 0.5, 0.25 + 5e-8, 0.25}));
}

TEST(Treeplex, BehavioralSequenceRoundTrip) {
  Treeplex tp = two_level();
  std::vector<double> q = {0.3, 0.7, 0.9, 0.1};
  std::vector<double> z = sequence_from_behavioral(tp, q);
  EXPECT_NEAR(z[0], 0.3, 1e-15);
  EXPECT_NEAR(z[1], 0.7, 1e-15);
  EXPECT_NEAR(z[2], 0.63, 1e-15);
  EXPECT_NEAR(z[3], 0.07, 1e-15);
  std::vector<double> back = behavioral_from_sequence(tp, z);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(back[i], q[i], 1e-12);
}

TEST(Treeplex, UnreachedSimplexReadsUniform) {
  Treeplex tp = two_level();
  std::vector<double> q = behavioral_from_sequence(tp, {1.0, 0.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(q[0], 1.0);
  EXPECT_DOUBLE_EQ(q[1], 0.0);
  EXPECT_DOUBLE_EQ(q[2], 0.5);
  EXPECT_DOUBLE_EQ(q[3], 0.5);
}

TEST(Treeplex, UniformStrategies) {
  Treeplex tp = two_level();
  std::vector<double> z = uniform_sequence(tp);
  EXPECT_DOUBLE_EQ(z[0], 0.5);
  EXPECT_DOUBLE_EQ(z[1], 0.5);
  EXPECT_DOUBLE_EQ(z[2], 0.25);
  EXPECT_DOUBLE_EQ(z[3], 0.25);
  EXPECT_TRUE(is_realization(tp, z));

  // Deeper shape: every simplex must sum to its parent mass.
  Treeplex deep({{3, 0}, {2, 1}, {2, 4}, {4, 2}});
  EXPECT_TRUE(is_realization(deep, uniform_sequence(deep)));
}

}  // namespace
}  // namespace seqform
