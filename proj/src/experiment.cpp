#include "seqform/experiment.h"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace seqform {

bool is_mirror_descent(const std::string& algorithm) {
  return algorithm == "vogda" || algorithm == "vomwu" ||
         algorithm == "dogda" || algorithm == "domwu";
}

RegularizerKind mirror_descent_kind(const std::string& algorithm) {
  if (algorithm == "vogda") return RegularizerKind::kEuclidean;
  if (algorithm == "vomwu") return RegularizerKind::kEntropy;
  if (algorithm == "dogda") return RegularizerKind::kDilatedEuclidean;
  if (algorithm == "domwu") return RegularizerKind::kDilatedEntropy;
  throw std::invalid_argument("'" + algorithm +
                              "' is not a mirror-descent algorithm");
}

CfrConfig regret_config(const std::string& algorithm) {
  CfrConfig cfg;
  if (algorithm == "cfr") {
    cfg.rule = RegretRule::kMatching;
  } else if (algorithm == "cfr+") {
    cfg.rule = RegretRule::kMatchingPlus;
    cfg.alternating = true;
  } else if (algorithm == "opt-cfr") {
    cfg.rule = RegretRule::kMatching;
    cfg.optimistic = true;
  } else if (algorithm == "opt-cfr+") {
    cfg.rule = RegretRule::kMatchingPlus;
    cfg.optimistic = true;
    cfg.alternating = true;
  } else {
    throw std::invalid_argument("'" + algorithm +
                                "' is not a regret-matching algorithm");
  }
  return cfg;
}

namespace {

Averaging parse_averaging(const std::string& s) {
  if (s == "uniform") return Averaging::kUniform;
  if (s == "linear") return Averaging::kLinear;
  if (s == "last") return Averaging::kLast;
  throw std::invalid_argument("unknown averaging '" + s +
                              "' (choose uniform, linear, or last)");
}

struct ReferencePair {
  bool present = false;
  std::vector<double> x, y;
};

ReferencePair resolve_reference(const Game& game, const std::string& spec) {
  ReferencePair ref;
  if (spec.empty()) return ref;
  ref.present = true;
  if (spec == "uniform") {
    ref.x = uniform_sequence(game.x);
    ref.y = uniform_sequence(game.y);
  } else {
    std::tie(ref.x, ref.y) = load_strategy_pair(game, spec);
  }
  return ref;
}

double l2_distance(const std::vector<double>& ax, const std::vector<double>& ay,
                   const std::vector<double>& bx,
                   const std::vector<double>& by) {
  double d = 0.0;
  for (size_t i = 0; i < ax.size(); ++i) d += (ax[i] - bx[i]) * (ax[i] - bx[i]);
  for (size_t j = 0; j < ay.size(); ++j) d += (ay[j] - by[j]) * (ay[j] - by[j]);
  return std::sqrt(d);
}

void validate_common(const RunSpec& spec) {
  if (spec.iterations < 0)
    throw std::invalid_argument("iterations must be nonnegative");
  if (spec.metric_every < 1)
    throw std::invalid_argument("metric-every must be at least 1");
  if (spec.alternating < -1 || spec.alternating > 1)
    throw std::invalid_argument("alternating must be 0 or 1");
}

Trajectory run_mirror_descent(const Game& game, const RunSpec& spec) {
  if (!spec.averaging.empty() && spec.averaging != "last")
    throw std::invalid_argument(
        "the mirror-descent algorithms evaluate their last iterate; "
        "averaging '" +
        spec.averaging + "' is not available");
  if (spec.alternating == 1)
    throw std::invalid_argument(
        "alternating updates apply to the regret-matching algorithms only");
  OomdConfig cfg;
  cfg.kind = mirror_descent_kind(spec.algorithm);
  cfg.eta = spec.eta;
  ReferencePair ref = resolve_reference(game, spec.reference);

  OomdState st = oomd_init(game, cfg);
  Trajectory out;
  auto record = [&] {
    MetricsRecord r;
    r.t = st.t;
    r.gap = duality_gap(game, st.x, st.y);
    if (ref.present) {
      r.l2_to_ref = l2_distance(st.x, st.y, ref.x, ref.y);
      r.theta = oomd_theta(game, cfg, st, ref.x, ref.y);
    }
    out.records.push_back(r);
  };
  record();
  for (long t = 1; t <= spec.iterations; ++t) {
    oomd_step(game, cfg, st);
    if (t % spec.metric_every == 0) record();
  }
  return out;
}

Trajectory run_regret_matching(const Game& game, const RunSpec& spec) {
  if (spec.eta != 0.0)
    throw std::invalid_argument(
        "step size applies to the mirror-descent algorithms only");
  CfrConfig cfg = regret_config(spec.algorithm);
  if (spec.alternating != -1) cfg.alternating = spec.alternating == 1;
  Averaging averaging =
      spec.averaging.empty()
          ? (cfg.rule == RegretRule::kMatchingPlus ? Averaging::kLinear
                                                   : Averaging::kUniform)
          : parse_averaging(spec.averaging);
  ReferencePair ref = resolve_reference(game, spec.reference);

  CfrState st = cfr_init(game, cfg);
  Trajectory out;
  std::vector<double> ex, ey;
  auto record = [&](long step) {
    cfr_strategy(game, st, averaging, ex, ey);
    MetricsRecord r;
    r.t = step;
    r.gap = duality_gap(game, ex, ey);
    if (ref.present) r.l2_to_ref = l2_distance(ex, ey, ref.x, ref.y);
    out.records.push_back(r);
  };
  record(0);
  for (long t = 1; t <= spec.iterations; ++t) {
    cfr_step(game, cfg, st);
    if (t % spec.metric_every == 0) record(t);
  }
  return out;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Trajectory run_experiment(const Game& game, const RunSpec& spec) {
  validate_common(spec);
  if (is_mirror_descent(spec.algorithm)) return run_mirror_descent(game, spec);
  return run_regret_matching(game, spec);
}

void write_csv(const Trajectory& trajectory, std::ostream& out) {
  out << "t,gap,l2_to_ref,theta\n";
  for (const MetricsRecord& r : trajectory.records) {
    out << r.t << ',';
    out << (r.gap < 1e-12 ? "0" : format_value(r.gap));
    out << ',';
    if (r.l2_to_ref) out << format_value(*r.l2_to_ref);
    out << ',';
    if (r.theta) out << format_value(*r.theta);
    out << '\n';
  }
}

std::pair<std::vector<double>, std::vector<double>> load_strategy_pair(
    const Game& game, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> all;
  all.reserve(game.pair_dim());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t used = 0;
    double v;
    try {
      v = std::stod(line, &used);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": not a number: '" + line + "'");
    }
    while (used < line.size() && std::isspace(static_cast<unsigned char>(line[used])))
      ++used;
    if (used != line.size())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": trailing characters after the number");
    all.push_back(v);
  }
  if (static_cast<int>(all.size()) != game.pair_dim())
    throw std::runtime_error(
        path + ": expected " + std::to_string(game.pair_dim()) +
        " values (x plan then y plan), found " + std::to_string(all.size()));
  std::vector<double> x(all.begin(), all.begin() + game.x_dim());
  std::vector<double> y(all.begin() + game.x_dim(), all.end());
  std::string why = realization_violation(game.x, x);
  if (!why.empty())
    throw std::runtime_error(path + ": x plan invalid: " + why);
  why = realization_violation(game.y, y);
  if (!why.empty())
    throw std::runtime_error(path + ": y plan invalid: " + why);
  return {std::move(x), std::move(y)};
}

void save_strategy_pair(const Game& game, const std::vector<double>& x,
                        const std::vector<double>& y,
                        const std::string& path) {
  if (static_cast<int>(x.size()) != game.x_dim() ||
      static_cast<int>(y.size()) != game.y_dim())
    throw std::invalid_argument("strategy lengths do not match the game");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (double v : x) out << format_value(v) << '\n';
  for (double v : y) out << format_value(v) << '\n';
  if (!out) throw std::runtime_error("failed while writing " + path);
}

}  // namespace seqform
