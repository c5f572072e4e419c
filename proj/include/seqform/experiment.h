#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "seqform/cfr.h"
#include "seqform/game.h"
#include "seqform/metrics.h"
#include "seqform/oomd.h"

namespace seqform {

// A reproducible convergence run. algorithm is one of the mirror-descent
// names (vogda, vomwu, dogda, domwu) or the regret-matching names (cfr,
// cfr+, opt-cfr, opt-cfr+).
struct RunSpec {
  std::string game = "rps";
  std::string algorithm = "domwu";
  long iterations = 1000;
  long metric_every = 10;
  // Mirror descent only; 0 selects 1/(8(M+N)). Regret matching has no step
  // size and rejects a nonzero value.
  double eta = 0.0;
  // "uniform", "linear", or "last". Empty selects the algorithm's default:
  // last for mirror descent (which has no other choice), uniform for
  // cfr/opt-cfr, linear for cfr+/opt-cfr+.
  std::string averaging;
  // -1 keeps the algorithm's default (alternating for cfr+/opt-cfr+,
  // simultaneous otherwise); 0 and 1 force it. Mirror descent is always
  // simultaneous and rejects 1.
  int alternating = -1;
  // Equilibrium to measure distances against: empty for none, "uniform" for
  // the uniform pair, otherwise a strategy-pair file path.
  std::string reference;
};

bool is_mirror_descent(const std::string& algorithm);
RegularizerKind mirror_descent_kind(const std::string& algorithm);
CfrConfig regret_config(const std::string& algorithm);

struct Trajectory {
  std::vector<MetricsRecord> records;
};

// Runs the configuration on the game and samples metrics at step 0 and every
// metric_every steps: floor(iterations / metric_every) + 1 rows. Mirror
// descent evaluates its last iterate; regret matching the configured
// average. theta is reported for mirror-descent runs with a reference.
Trajectory run_experiment(const Game& game, const RunSpec& spec);

// Header t,gap,l2_to_ref,theta; 17 significant digits; gaps below 1e-12
// print as 0; absent fields leave their cell empty. Byte-identical across
// repeated runs of the same spec.
void write_csv(const Trajectory& trajectory, std::ostream& out);

// Strategy-pair files: one number per line, pair_dim() lines total, the x
// plan's values followed by the y plan's. Loading validates both plans.
std::pair<std::vector<double>, std::vector<double>> load_strategy_pair(
    const Game& game, const std::string& path);
void save_strategy_pair(const Game& game, const std::vector<double>& x,
                        const std::vector<double>& y, const std::string& path);

}  // namespace seqform
