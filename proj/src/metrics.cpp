#include "seqform/metrics.h"

namespace seqform {

namespace {

// Chooses one action per simplex minimizing the backed-up loss, children
// first, then realizes the chosen plan from the top. Strict comparison keeps
// the lowest index on ties.
BestResponse minimize_over_treeplex(const Treeplex& tp,
                                    const std::vector<double>& loss) {
  std::vector<double> val = loss;
  std::vector<int> choice(tp.simplex_count());
  double total = 0.0;
  for (int s = tp.simplex_count() - 1; s >= 0; --s) {
    int first = tp.first_index(s);
    int best = first;
    for (int i = first + 1; i < first + tp.actions(s); ++i)
      if (val[i - 1] < val[best - 1]) best = i;
    choice[s] = best;
    if (tp.parent(s) != 0)
      val[tp.parent(s) - 1] += val[best - 1];
    else
      total += val[best - 1];
  }
  BestResponse br;
  br.value = total;
  br.strategy.assign(tp.dim(), 0.0);
  for (int s = 0; s < tp.simplex_count(); ++s) {
    double mass = tp.parent(s) == 0 ? 1.0 : br.strategy[tp.parent(s) - 1];
    br.strategy[choice[s] - 1] = mass;
  }
  return br;
}

}  // namespace

BestResponse best_response_x(const Game& game, const std::vector<double>& y) {
  return minimize_over_treeplex(game.x, game.payoff.multiply_right(y));
}

BestResponse best_response_y(const Game& game, const std::vector<double>& x) {
  std::vector<double> gain = game.payoff.multiply_transpose(x);
  for (double& g : gain) g = -g;
  BestResponse br = minimize_over_treeplex(game.y, gain);
  br.value = -br.value;
  return br;
}

double duality_gap(const Game& game, const std::vector<double>& x,
                   const std::vector<double>& y) {
  return best_response_y(game, x).value - best_response_x(game, y).value;
}

}  // namespace seqform
