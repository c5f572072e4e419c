#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seqform/experiment.h"

namespace {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace(const seqform::Trajectory& trajectory,
                 const std::string& out_path) {
  if (out_path.empty()) {
    seqform::write_csv(trajectory, std::cout);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  seqform::write_csv(trajectory, out);
  if (!out) throw std::runtime_error("failed while writing " + out_path);
}

int do_run(const seqform::RunSpec& spec, const std::string& out_path) {
  seqform::Game game = seqform::make_game(spec.game);
  write_trace(seqform::run_experiment(game, spec), out_path);
  return 0;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

long config_long(const std::string& key, const std::string& value, long min) {
  size_t used = 0;
  long parsed = 0;
  try {
    parsed = std::stol(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || parsed < min)
    throw std::runtime_error("config key '" + key + "' has bad value '" +
                             value + "'");
  return parsed;
}

double config_double(const std::string& key, const std::string& value) {
  size_t used = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size())
    throw std::runtime_error("config key '" + key + "' has bad value '" +
                             value + "'");
  return parsed;
}

// Fills every option the command line left untouched from a key=value file,
// so flags override the file. Lines may be blank or start with '#'.
void apply_config(const CLI::App* cmd, const std::string& path,
                  std::map<std::string, std::function<void(const std::string&)>>
                      setters) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": unknown config key '" + key + "'");
    if (cmd->count("--" + key) == 0) it->second(value);
  }
}

std::string sanitize_token(const std::string& token) {
  std::string out;
  for (char c : token)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
            c == '-' || c == '+')
               ? c
               : '_';
  return out.empty() ? "eta" : out;
}

int do_sweep(const seqform::RunSpec& base, const std::string& etas,
             const std::string& out_dir, int threads) {
  if (out_dir.empty())
    throw std::runtime_error("sweep needs --out-dir (flag or config file)");
  std::vector<std::string> tokens;
  std::stringstream ss(etas);
  std::string token;
  while (std::getline(ss, token, ','))
    if (!token.empty()) tokens.push_back(token);
  if (tokens.empty())
    throw std::runtime_error("--etas needs a comma-separated list of values");

  seqform::Game game = seqform::make_game(base.game);
  if (!seqform::is_mirror_descent(base.algorithm))
    throw std::runtime_error(
        "sweep varies the step size, which only the mirror-descent "
        "algorithms have");

  std::filesystem::create_directories(out_dir);
  std::vector<std::string> files(tokens.size());
  auto worker = [&](size_t k) {
    seqform::RunSpec spec = base;
    size_t used = 0;
    spec.eta = std::stod(tokens[k], &used);
    if (used != tokens[k].size() || !(spec.eta > 0.0))
      throw std::runtime_error("bad step size '" + tokens[k] + "'");
    files[k] = "eta_" + sanitize_token(tokens[k]) + ".csv";
    seqform::Trajectory tr = seqform::run_experiment(game, spec);
    std::ofstream out(std::filesystem::path(out_dir) / files[k]);
    if (!out) throw std::runtime_error("cannot write " + files[k]);
    seqform::write_csv(tr, out);
  };
  if (threads <= 1) {
    for (size_t k = 0; k < tokens.size(); ++k) worker(k);
  } else {
    for (size_t base_k = 0; base_k < tokens.size();
         base_k += static_cast<size_t>(threads)) {
      std::vector<std::future<void>> batch;
      for (size_t k = base_k;
           k < tokens.size() && k < base_k + static_cast<size_t>(threads); ++k)
        batch.push_back(std::async(std::launch::async, worker, k));
      for (auto& f : batch) f.get();
    }
  }
  std::ofstream index(std::filesystem::path(out_dir) / "index.csv");
  if (!index) throw std::runtime_error("cannot write index.csv");
  index << "eta,file\n";
  for (size_t k = 0; k < tokens.size(); ++k)
    index << tokens[k] << ',' << files[k] << '\n';
  return 0;
}

int do_gap(const std::string& game_spec, const std::string& strategy_path) {
  seqform::Game game = seqform::make_game(game_spec);
  auto [x, y] = seqform::load_strategy_pair(game, strategy_path);
  double gap = seqform::duality_gap(game, x, y);
  std::cout << "gap " << format_value(gap) << "\n";
  std::cout << "raw_gap " << format_value(gap * game.scale) << "\n";
  return 0;
}

int do_describe(const std::string& game_spec) {
  seqform::Game game = seqform::make_game(game_spec);
  std::cout << "name " << game.name << "\n";
  std::cout << "x_dim " << game.x_dim() << "\n";
  std::cout << "y_dim " << game.y_dim() << "\n";
  std::cout << "pair_dim " << game.pair_dim() << "\n";
  std::cout << "x_infosets " << game.x_infosets << "\n";
  std::cout << "y_infosets " << game.y_infosets << "\n";
  std::cout << "nonzeros " << game.payoff.nonzeros() << "\n";
  std::cout << "scale " << format_value(game.scale) << "\n";
  std::cout << "max_abs_entry " << format_value(game.payoff.max_abs_entry())
            << "\n";
  std::cout << "default_eta " << format_value(seqform::default_step_size(game))
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sequence-form solver for two-player zero-sum games"};
  app.require_subcommand(1);

  seqform::RunSpec spec;
  std::string out_path, etas, out_dir, strategy_path, config_path;
  std::string gap_game = "rps", describe_game = "rps";
  int threads = 1;

  auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--game", spec.game,
                    "rps, kuhn, leduc, or a game file path")
        ->capture_default_str();
    cmd->add_option("--algorithm", spec.algorithm,
                    "vogda, vomwu, dogda, domwu, cfr, cfr+, opt-cfr, opt-cfr+")
        ->capture_default_str();
    cmd->add_option("--iters", spec.iterations, "solver steps")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--metric-every", spec.metric_every,
                    "steps between metric rows")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--averaging", spec.averaging,
                    "uniform, linear, or last (regret matching)");
    cmd->add_option("--alternating", spec.alternating,
                    "1 = update y against the fresh x (regret matching)")
        ->check(CLI::Range(0, 1));
    cmd->add_option("--ref", spec.reference,
                    "uniform or a strategy-pair file; enables the distance "
                    "columns");
    cmd->add_option("--config", config_path,
                    "key=value file with the options above; command-line "
                    "flags override it");
  };

  // Setters shared by the run and sweep config files.
  auto shared_setters = [&]() {
    std::map<std::string, std::function<void(const std::string&)>> s;
    s["game"] = [&](const std::string& v) { spec.game = v; };
    s["algorithm"] = [&](const std::string& v) { spec.algorithm = v; };
    s["iters"] = [&](const std::string& v) {
      spec.iterations = config_long("iters", v, 0);
    };
    s["metric-every"] = [&](const std::string& v) {
      spec.metric_every = config_long("metric-every", v, 1);
    };
    s["averaging"] = [&](const std::string& v) { spec.averaging = v; };
    s["alternating"] = [&](const std::string& v) {
      long flag = config_long("alternating", v, 0);
      if (flag > 1)
        throw std::runtime_error("config key 'alternating' must be 0 or 1");
      spec.alternating = static_cast<int>(flag);
    };
    s["ref"] = [&](const std::string& v) { spec.reference = v; };
    return s;
  };

  CLI::App* run = app.add_subcommand("run", "Write one convergence trace");
  add_run_options(run);
  run->add_option("--eta", spec.eta,
                  "step size (mirror descent; 0 = 1/(8(M+N)))");
  run->add_option("--out", out_path, "CSV path (stdout when omitted)");

  CLI::App* sweep =
      app.add_subcommand("sweep", "One trace per step size, plus an index");
  add_run_options(sweep);
  sweep->add_option("--etas", etas,
                    "comma-separated step sizes (required here or in the "
                    "config file)");
  sweep->add_option("--out-dir", out_dir,
                    "directory for the CSV files (required here or in the "
                    "config file)");
  sweep->add_option("--threads", threads, "concurrent runs")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CLI::App* gap = app.add_subcommand(
      "gap", "Duality gap of a saved strategy pair");
  gap->add_option("--game", gap_game, "rps, kuhn, leduc, or a game file path")
      ->capture_default_str();
  gap->add_option("--strategy", strategy_path, "strategy-pair file")
      ->required();

  CLI::App* describe =
      app.add_subcommand("describe", "Dimensions and constants of a game");
  describe
      ->add_option("--game", describe_game,
                   "rps, kuhn, leduc, or a game file path")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (!config_path.empty()) {
        auto setters = shared_setters();
        setters["eta"] = [&](const std::string& v) {
          spec.eta = config_double("eta", v);
        };
        setters["out"] = [&](const std::string& v) { out_path = v; };
        apply_config(run, config_path, std::move(setters));
      }
      return do_run(spec, out_path);
    }
    if (sweep->parsed()) {
      if (!config_path.empty()) {
        auto setters = shared_setters();
        setters["etas"] = [&](const std::string& v) { etas = v; };
        setters["out-dir"] = [&](const std::string& v) { out_dir = v; };
        setters["threads"] = [&](const std::string& v) {
          threads = static_cast<int>(config_long("threads", v, 1));
        };
        apply_config(sweep, config_path, std::move(setters));
      }
      return do_sweep(spec, etas, out_dir, threads);
    }
    if (gap->parsed()) return do_gap(gap_game, strategy_path);
    if (describe->parsed()) return do_describe(describe_game);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
