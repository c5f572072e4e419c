#pragma once

#include <vector>

#include "seqform/game.h"

namespace seqform {

enum class RegretRule { kMatching, kMatchingPlus };
enum class Averaging { kUniform, kLinear, kLast };

struct CfrConfig {
  RegretRule rule = RegretRule::kMatching;
  // Count the newest instantaneous regret twice when forming the next
  // strategy.
  bool optimistic = false;
  // Update y against the freshly updated x instead of the simultaneous one.
  bool alternating = false;
};

// Counterfactual-regret state. t counts the iterates produced so far; the
// initial strategy is iterate 1.
struct CfrState {
  std::vector<double> x_behavior, y_behavior;
  std::vector<double> x_seq, y_seq;
  std::vector<double> x_regret, y_regret;
  std::vector<double> x_sum, y_sum;    // running sums of iterates
  std::vector<double> x_wsum, y_wsum;  // running sums weighted by t
  std::vector<double> y_loss_seen;     // loss vector y's last update consumed
  long t = 1;
};

// Starts both players uniform.
CfrState cfr_init(const Game& game, const CfrConfig& cfg);
// Starts from given behavioral strategies (each simplex a distribution).
CfrState cfr_init(const Game& game, const CfrConfig& cfg,
                  const std::vector<double>& x_behavior0,
                  const std::vector<double>& y_behavior0);

// One regret-matching update of both players, producing iterate t+1.
void cfr_step(const Game& game, const CfrConfig& cfg, CfrState& state);

// The strategy pair the run evaluates after state.t iterates: the plain
// average, the linearly weighted average, or the newest iterate.
void cfr_strategy(const Game& game, const CfrState& state, Averaging averaging,
                  std::vector<double>& x_out, std::vector<double>& y_out);

}  // namespace seqform
