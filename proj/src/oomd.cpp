#include "seqform/oomd.h"

#include <cassert>
#include <stdexcept>
#include <string>

namespace seqform {

double default_step_size(const Game& game) {
  return 1.0 / (8.0 * game.pair_dim());
}

namespace {

void check_start(const Treeplex& tp, const std::vector<double>& z,
                 RegularizerKind kind, const char* who) {
  std::string why = realization_violation(tp, z);
  if (!why.empty())
    throw std::invalid_argument(std::string(who) +
                                " start is not a realization plan: " + why);
  if (regularizer_requires_positive_center(kind))
    for (double v : z)
      if (!(v > 0.0))
        throw std::invalid_argument(
            std::string(who) +
            " start must be strictly positive for an entropy regularizer");
}

std::vector<double> slice(const std::vector<double>& v, int begin, int len) {
  return std::vector<double>(v.begin() + begin, v.begin() + begin + len);
}

#ifndef NDEBUG
// Multiplicative stability of dilated-entropy steps: at step sizes no larger
// than the conservative default, every behavioral coordinate of the new point
// must stay within [3/4, 4/3] of the center it was proxed from.
bool behavioral_ratios_bounded(const Treeplex& tp, const std::vector<double>& z,
                               const std::vector<double>& center) {
  std::vector<double> q = behavioral_from_sequence(tp, z);
  std::vector<double> qc = behavioral_from_sequence(tp, center);
  for (size_t i = 0; i < q.size(); ++i) {
    double r = q[i] / qc[i];
    if (!(r >= 0.75 - 1e-9 && r <= 4.0 / 3.0 + 1e-9)) return false;
  }
  return true;
}
#endif

}  // namespace

OomdState oomd_init(const Game& game, const OomdConfig& cfg) {
  return oomd_init(game, cfg, uniform_sequence(game.x),
                   uniform_sequence(game.y));
}

OomdState oomd_init(const Game& game, const OomdConfig& cfg,
                    const std::vector<double>& x0,
                    const std::vector<double>& y0) {
  check_start(game.x, x0, cfg.kind, "x");
  check_start(game.y, y0, cfg.kind, "y");
  OomdState st;
  st.x = x0;
  st.y = y0;
  st.x_hat = x0;
  st.y_hat = y0;
  st.field = payoff_field(game, x0, y0);
  st.t = 0;
  return st;
}

void oomd_step(const Game& game, const OomdConfig& cfg, OomdState& state) {
  double eta = cfg.eta > 0.0 ? cfg.eta : default_step_size(game);
  int m = game.x_dim(), n = game.y_dim();

  // Play against the cached gradient of the previous iterate.
  state.x = prox(game.x, cfg.kind, state.x_hat, slice(state.field, 0, m), eta,
                 cfg.alpha_x)
                .z;
  state.y = prox(game.y, cfg.kind, state.y_hat, slice(state.field, m, n), eta,
                 cfg.alpha_y)
                .z;
#ifndef NDEBUG
  if (cfg.kind == RegularizerKind::kDilatedEntropy &&
      eta <= default_step_size(game)) {
    assert(behavioral_ratios_bounded(game.x, state.x, state.x_hat));
    assert(behavioral_ratios_bounded(game.y, state.y, state.y_hat));
  }
#endif

  // The single fresh gradient evaluation of this step.
  std::vector<double> fresh = payoff_field(game, state.x, state.y);

  state.x_hat = prox(game.x, cfg.kind, state.x_hat, slice(fresh, 0, m), eta,
                     cfg.alpha_x)
                    .z;
  state.y_hat = prox(game.y, cfg.kind, state.y_hat, slice(fresh, m, n), eta,
                     cfg.alpha_y)
                    .z;
  state.field = std::move(fresh);
  ++state.t;
}

double oomd_theta(const Game& game, const OomdConfig& cfg,
                  const OomdState& state, const std::vector<double>& x_star,
                  const std::vector<double>& y_star) {
  double to_star = bregman(game.x, cfg.kind, x_star, state.x_hat, cfg.alpha_x) +
                   bregman(game.y, cfg.kind, y_star, state.y_hat, cfg.alpha_y);
  double drift = bregman(game.x, cfg.kind, state.x_hat, state.x, cfg.alpha_x) +
                 bregman(game.y, cfg.kind, state.y_hat, state.y, cfg.alpha_y);
  return to_star + drift / 16.0;
}

}  // namespace seqform
