#include "seqform/cfr.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace seqform {

namespace {

void check_behavioral(const Treeplex& tp, const std::vector<double>& q,
                      const char* who) {
  if (static_cast<int>(q.size()) != tp.dim())
    throw std::invalid_argument(std::string(who) +
                                " behavioral strategy has the wrong length");
  for (int s = 0; s < tp.simplex_count(); ++s) {
    double sum = 0.0;
    for (int i = tp.first_index(s); i < tp.first_index(s) + tp.actions(s);
         ++i) {
      if (q[i - 1] < 0.0)
        throw std::invalid_argument(std::string(who) +
                                    " behavioral strategy has a negative entry");
      sum += q[i - 1];
    }
    if (std::fabs(sum - 1.0) > 1e-9)
      throw std::invalid_argument(std::string(who) + " simplex " +
                                  std::to_string(s) + " does not sum to one");
  }
}

// Backs up expected losses through the treeplex and turns the per-action
// regrets into the next behavioral strategy under the configured rule.
void update_player(const Treeplex& tp, const CfrConfig& cfg,
                   std::vector<double>& q, std::vector<double>& regret,
                   const std::vector<double>& loss) {
  int dim = tp.dim();
  std::vector<double> val = loss;
  std::vector<double> inst(dim);
  for (int s = tp.simplex_count() - 1; s >= 0; --s) {
    int first = tp.first_index(s);
    double ev = 0.0;
    for (int i = first; i < first + tp.actions(s); ++i)
      ev += q[i - 1] * val[i - 1];
    for (int i = first; i < first + tp.actions(s); ++i)
      inst[i - 1] = ev - val[i - 1];
    if (tp.parent(s) != 0) val[tp.parent(s) - 1] += ev;
  }
  for (int s = 0; s < tp.simplex_count(); ++s) {
    int first = tp.first_index(s);
    double total = 0.0;
    for (int i = first; i < first + tp.actions(s); ++i) {
      double& r = regret[i - 1];
      if (cfg.rule == RegretRule::kMatchingPlus)
        r = std::max(r + inst[i - 1], 0.0);
      else
        r += inst[i - 1];
      double base = cfg.optimistic ? r + inst[i - 1] : r;
      q[i - 1] = std::max(base, 0.0);
      total += q[i - 1];
    }
    if (total > 0.0) {
      for (int i = first; i < first + tp.actions(s); ++i) q[i - 1] /= total;
    } else {
      for (int i = first; i < first + tp.actions(s); ++i)
        q[i - 1] = 1.0 / tp.actions(s);
    }
  }
}

void accumulate(const std::vector<double>& z, double weight,
                std::vector<double>& sum, std::vector<double>& wsum) {
  for (size_t i = 0; i < z.size(); ++i) {
    sum[i] += z[i];
    wsum[i] += weight * z[i];
  }
}

}  // namespace

CfrState cfr_init(const Game& game, const CfrConfig& cfg) {
  return cfr_init(game, cfg, uniform_behavioral(game.x),
                  uniform_behavioral(game.y));
}

CfrState cfr_init(const Game& game, const CfrConfig& cfg,
                  const std::vector<double>& x_behavior0,
                  const std::vector<double>& y_behavior0) {
  (void)cfg;
  check_behavioral(game.x, x_behavior0, "x");
  check_behavioral(game.y, y_behavior0, "y");
  CfrState st;
  st.x_behavior = x_behavior0;
  st.y_behavior = y_behavior0;
  st.x_seq = sequence_from_behavioral(game.x, st.x_behavior);
  st.y_seq = sequence_from_behavioral(game.y, st.y_behavior);
  st.x_regret.assign(game.x_dim(), 0.0);
  st.y_regret.assign(game.y_dim(), 0.0);
  st.x_sum = st.x_seq;
  st.y_sum = st.y_seq;
  st.x_wsum = st.x_seq;
  st.y_wsum = st.y_seq;
  std::vector<double> gx = game.payoff.multiply_transpose(st.x_seq);
  st.y_loss_seen.resize(game.y_dim());
  for (int j = 0; j < game.y_dim(); ++j) st.y_loss_seen[j] = -gx[j];
  st.t = 1;
  return st;
}

void cfr_step(const Game& game, const CfrConfig& cfg, CfrState& state) {
  std::vector<double> x_loss = game.payoff.multiply_right(state.y_seq);
  update_player(game.x, cfg, state.x_behavior, state.x_regret, x_loss);
  std::vector<double> x_next = sequence_from_behavioral(game.x, state.x_behavior);

  const std::vector<double>& x_for_y = cfg.alternating ? x_next : state.x_seq;
  std::vector<double> gx = game.payoff.multiply_transpose(x_for_y);
  std::vector<double> y_loss(game.y_dim());
  for (int j = 0; j < game.y_dim(); ++j) y_loss[j] = -gx[j];
  update_player(game.y, cfg, state.y_behavior, state.y_regret, y_loss);

  state.x_seq = std::move(x_next);
  state.y_seq = sequence_from_behavioral(game.y, state.y_behavior);
  state.y_loss_seen = std::move(y_loss);
  ++state.t;
  accumulate(state.x_seq, static_cast<double>(state.t), state.x_sum,
             state.x_wsum);
  accumulate(state.y_seq, static_cast<double>(state.t), state.y_sum,
             state.y_wsum);
}

void cfr_strategy(const Game& game, const CfrState& state, Averaging averaging,
                  std::vector<double>& x_out, std::vector<double>& y_out) {
  (void)game;
  switch (averaging) {
    case Averaging::kLast:
      x_out = state.x_seq;
      y_out = state.y_seq;
      return;
    case Averaging::kUniform: {
      double inv = 1.0 / static_cast<double>(state.t);
      x_out.resize(state.x_sum.size());
      y_out.resize(state.y_sum.size());
      for (size_t i = 0; i < state.x_sum.size(); ++i)
        x_out[i] = state.x_sum[i] * inv;
      for (size_t j = 0; j < state.y_sum.size(); ++j)
        y_out[j] = state.y_sum[j] * inv;
      return;
    }
    case Averaging::kLinear: {
      double inv = 2.0 / (static_cast<double>(state.t) * (state.t + 1.0));
      x_out.resize(state.x_wsum.size());
      y_out.resize(state.y_wsum.size());
      for (size_t i = 0; i < state.x_wsum.size(); ++i)
        x_out[i] = state.x_wsum[i] * inv;
      for (size_t j = 0; j < state.y_wsum.size(); ++j)
        y_out[j] = state.y_wsum[j] * inv;
      return;
    }
  }
}

}  // namespace seqform
