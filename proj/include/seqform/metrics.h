#pragma once

#include <optional>
#include <vector>

#include "seqform/game.h"

namespace seqform {

struct BestResponse {
  double value = 0.0;            // optimal bilinear value for the responder
  std::vector<double> strategy;  // a pure realization plan attaining it
};

// min_x x^T G y against a fixed y. Ties resolve to the lowest sequence index.
BestResponse best_response_x(const Game& game, const std::vector<double>& y);
// max_y x^T G y against a fixed x, same tie rule.
BestResponse best_response_y(const Game& game, const std::vector<double>& x);

// max_y' x^T G y' - min_x' x'^T G y; zero exactly at equilibrium.
double duality_gap(const Game& game, const std::vector<double>& x,
                   const std::vector<double>& y);

// One row of a convergence trace. t counts solver steps; unset fields stay
// out of the CSV.
struct MetricsRecord {
  long t = 0;
  double gap = 0.0;
  std::optional<double> l2_to_ref;
  std::optional<double> theta;
};

}  // namespace seqform
