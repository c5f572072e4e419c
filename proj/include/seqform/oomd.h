#pragma once

#include <vector>

#include "seqform/game.h"
#include "seqform/regularizer.h"

namespace seqform {

struct OomdConfig {
  RegularizerKind kind = RegularizerKind::kDilatedEntropy;
  // Step size; any value <= 0 selects default_step_size(game).
  double eta = 0.0;
  // Per-simplex weights for the dilated kinds (empty = all ones).
  std::vector<double> alpha_x, alpha_y;
};

// 1 / (8 (M + N)), the step size under which the optimistic updates come
// with a last-iterate guarantee for normalized payoffs.
double default_step_size(const Game& game);

// Optimistic mirror-descent pair state. After t steps, x/y hold the played
// iterate z_t, x_hat/y_hat the prox center for step t+1, and field the
// gradient F(z_t) that the next step will reuse as its prediction.
struct OomdState {
  std::vector<double> x, y;
  std::vector<double> x_hat, y_hat;
  std::vector<double> field;
  long t = 0;
};

// Starts at the uniform strategy pair.
OomdState oomd_init(const Game& game, const OomdConfig& cfg);
// Starts at a given realization-plan pair. The entropy kinds require
// strictly positive plans; violations raise std::invalid_argument.
OomdState oomd_init(const Game& game, const OomdConfig& cfg,
                    const std::vector<double>& x0,
                    const std::vector<double>& y0);

// One simultaneous update of both players: play from the cached gradient,
// evaluate the gradient once at the played point, advance the centers.
void oomd_step(const Game& game, const OomdConfig& cfg, OomdState& state);

// The potential  D(z_star, z_hat) + (1/16) D(z_hat, z)  summed over both
// players at the state's current center/iterate pair; with the default step
// size it never increases along the run.
double oomd_theta(const Game& game, const OomdConfig& cfg,
                  const OomdState& state, const std::vector<double>& x_star,
                  const std::vector<double>& y_star);

}  // namespace seqform
