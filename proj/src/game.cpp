#include "seqform/game.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace seqform {

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<int> row_idx,
                           std::vector<int> col_idx,
                           std::vector<double> values)
    : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  size_t k = values.size();
  if (row_idx.size() != k || col_idx.size() != k)
    throw std::invalid_argument("coordinate arrays differ in length");
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (row_idx[a] != row_idx[b]) return row_idx[a] < row_idx[b];
    return col_idx[a] < col_idx[b];
  });
  row_.reserve(k);
  col_.reserve(k);
  values_.reserve(k);
  for (int p : order) {
    int r = row_idx[p], c = col_idx[p];
    if (r < 1 || r > rows || c < 1 || c > cols)
      throw std::invalid_argument("entry (" + std::to_string(r) + "," +
                                  std::to_string(c) + ") is out of range");
    if (!row_.empty() && row_.back() == r && col_.back() == c)
      throw std::invalid_argument("duplicate entry (" + std::to_string(r) +
                                  "," + std::to_string(c) + ")");
    row_.push_back(r);
    col_.push_back(c);
    values_.push_back(values[p]);
  }
  // After the prefix sum, row r's entries span
  // [row_offset_[r-1], row_offset_[r]).
  row_offset_.assign(rows + 1, 0);
  for (int r : row_) ++row_offset_[r];
  for (int r = 0; r < rows; ++r) row_offset_[r + 1] += row_offset_[r];

  col_order_.resize(k);
  std::iota(col_order_.begin(), col_order_.end(), 0);
  std::sort(col_order_.begin(), col_order_.end(), [&](int a, int b) {
    if (col_[a] != col_[b]) return col_[a] < col_[b];
    return row_[a] < row_[b];
  });
  col_offset_.assign(cols + 1, 0);
  for (int c : col_) ++col_offset_[c];
  for (int c = 0; c < cols; ++c) col_offset_[c + 1] += col_offset_[c];
}

std::vector<double> SparseMatrix::multiply_right(
    const std::vector<double>& y) const {
  if (static_cast<int>(y.size()) != cols_)
    throw std::invalid_argument("vector length does not match column count");
  std::vector<double> out(rows_, 0.0);
  for (int r = 1; r <= rows_; ++r) {
    double sum = 0.0;
    for (int k = row_offset_[r - 1]; k < row_offset_[r]; ++k)
      sum += values_[k] * y[col_[k] - 1];
    out[r - 1] = sum;
  }
  return out;
}

std::vector<double> SparseMatrix::multiply_transpose(
    const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != rows_)
    throw std::invalid_argument("vector length does not match row count");
  std::vector<double> out(cols_, 0.0);
  for (int c = 1; c <= cols_; ++c) {
    double sum = 0.0;
    for (int p = col_offset_[c - 1]; p < col_offset_[c]; ++p) {
      int k = col_order_[p];
      sum += values_[k] * x[row_[k] - 1];
    }
    out[c - 1] = sum;
  }
  return out;
}

double SparseMatrix::max_abs_entry() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

double SparseMatrix::sum_abs_entries() const {
  double s = 0.0;
  for (double v : values_) s += std::fabs(v);
  return s;
}

double bilinear_value(const Game& game, const std::vector<double>& x,
                      const std::vector<double>& y) {
  std::vector<double> gy = game.payoff.multiply_right(y);
  double v = 0.0;
  for (int i = 0; i < game.x_dim(); ++i) v += x[i] * gy[i];
  return v;
}

std::vector<double> payoff_field(const Game& game, const std::vector<double>& x,
                                 const std::vector<double>& y) {
  std::vector<double> gy = game.payoff.multiply_right(y);
  std::vector<double> gtx = game.payoff.multiply_transpose(x);
  std::vector<double> f(game.pair_dim());
  for (int i = 0; i < game.x_dim(); ++i) f[i] = gy[i];
  for (int j = 0; j < game.y_dim(); ++j) f[game.x_dim() + j] = -gtx[j];
  return f;
}

Game make_matrix_game(const std::string& name,
                      const std::vector<std::vector<double>>& cost) {
  if (cost.empty() || cost[0].empty())
    throw std::invalid_argument("matrix game needs at least one entry");
  int m = static_cast<int>(cost.size());
  int n = static_cast<int>(cost[0].size());
  double scale = 0.0;
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("matrix rows differ in length");
    for (double v : row) scale = std::max(scale, std::fabs(v));
  }
  if (scale == 0.0) scale = 1.0;
  std::vector<int> ri, ci;
  std::vector<double> vals;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (cost[i][j] != 0.0) {
        ri.push_back(i + 1);
        ci.push_back(j + 1);
        vals.push_back(cost[i][j] / scale);
      }
  Game g;
  g.name = name;
  g.x = Treeplex({{m, 0}});
  g.y = Treeplex({{n, 0}});
  g.payoff = SparseMatrix(m, n, ri, ci, vals);
  g.scale = scale;
  g.x_infosets = 1;
  g.y_infosets = 1;
  return g;
}

Game make_rps() {
  // cost[i][j] is the row player's loss; action order rock, paper, scissors.
  return make_matrix_game("rps", {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}});
}

namespace {

struct PokerRules {
  int ranks = 3;
  int copies = 1;             // identical cards per rank in the deck
  std::vector<double> bets;   // bet size per betting round
  int max_raises = 1;         // per round
  double ante = 1.0;
};

// Assigns contiguous sequence indices as decision points are first visited.
// Index 1 is reserved for the empty sequence (a one-action simplex), so the
// payoff matrix dimension counts it even though no decision is made there.
struct SeqBuilder {
  std::vector<SimplexSpec> specs{{1, 0}};
  int next = 2;
  // key -> (first sequence index, simplex id)
  std::map<std::string, std::pair<int, int>> infoset_first;

  int visit(const std::string& key, int n_actions, int parent_seq) {
    auto it = infoset_first.find(key);
    if (it != infoset_first.end()) {
      const SimplexSpec& sp = specs[it->second.second];
      if (sp.actions != n_actions || sp.parent != parent_seq)
        throw std::logic_error("inconsistent revisit of decision point " + key);
      return it->second.first;
    }
    int first = next;
    infoset_first.emplace(key,
                          std::make_pair(first, static_cast<int>(specs.size())));
    specs.push_back({n_actions, parent_seq});
    next += n_actions;
    return first;
  }
};

struct PokerWalk {
  PokerRules rules;
  SeqBuilder builder[2];
  std::map<std::pair<int, int>, double> entries;
  double max_abs_cost = 0.0;

  int rank_of(int card) const { return card / rules.copies; }

  double showdown_cost(int rx, int ry, int rpub, double ix, double iy) const {
    int sign;
    if (rpub >= 0 && (rx == rpub || ry == rpub))
      sign = rx == rpub ? (ry == rpub ? 0 : 1) : -1;
    else
      sign = rx > ry ? 1 : rx < ry ? -1 : 0;
    return sign > 0 ? -iy : sign < 0 ? ix : 0.0;
  }

  void terminal(int sx, int sy, double cost, double prob) {
    max_abs_cost = std::max(max_abs_cost, std::fabs(cost));
    entries[{sx, sy}] += prob * cost;
  }

  // One betting round step. hist holds this round's actions; r1 the finished
  // first-round history (used in second-round information keys). Players
  // alternate starting with x, so the actor is the parity of hist.
  void betting(int rx, int ry, int rpub, double prob, int round,
               const std::string& r1, const std::string& hist, int raises,
               double invest_x, double invest_y, int sx, int sy) {
    int actor = static_cast<int>(hist.size()) % 2;
    bool facing_bet = !hist.empty() && hist.back() == 'r';
    std::string actions =
        facing_bet ? (raises < rules.max_raises ? "rcf" : "cf") : "rk";
    int own = actor == 0 ? rx : ry;
    std::string key =
        std::to_string(own) + ":" +
        (round == 0 ? hist : r1 + "|" + std::to_string(rpub) + "|" + hist);
    int first = builder[actor].visit(key, static_cast<int>(actions.size()),
                                     actor == 0 ? sx : sy);
    for (size_t a = 0; a < actions.size(); ++a) {
      char c = actions[a];
      int seq = first + static_cast<int>(a);
      int nsx = actor == 0 ? seq : sx;
      int nsy = actor == 1 ? seq : sy;
      double ix = invest_x, iy = invest_y;
      if (c == 'f') {
        terminal(nsx, nsy, actor == 0 ? ix : -iy, prob);
        continue;
      }
      if (c == 'r') {
        double target = std::max(ix, iy) + rules.bets[round];
        (actor == 0 ? ix : iy) = target;
        betting(rx, ry, rpub, prob, round, r1, hist + 'r', raises + 1, ix, iy,
                nsx, nsy);
        continue;
      }
      bool round_over;
      if (c == 'c') {
        (actor == 0 ? ix : iy) = std::max(ix, iy);
        round_over = true;
      } else {
        round_over = !hist.empty() && hist.back() == 'k';
      }
      if (!round_over) {
        betting(rx, ry, rpub, prob, round, r1, hist + c, raises, ix, iy, nsx,
                nsy);
      } else if (round + 1 < static_cast<int>(rules.bets.size())) {
        betting(rx, ry, rpub, prob, round + 1, hist + c, "", 0, ix, iy, nsx,
                nsy);
      } else {
        terminal(nsx, nsy, showdown_cost(rx, ry, rpub, ix, iy), prob);
      }
    }
  }

  void deal_all() {
    int num_cards = rules.ranks * rules.copies;
    bool has_public = rules.bets.size() > 1;
    double total = static_cast<double>(num_cards) * (num_cards - 1);
    if (has_public) total *= num_cards - 2;
    double prob = 1.0 / total;
    for (int cx = 0; cx < num_cards; ++cx)
      for (int cy = 0; cy < num_cards; ++cy) {
        if (cy == cx) continue;
        if (!has_public) {
          betting(rank_of(cx), rank_of(cy), -1, prob, 0, "", "", 0, rules.ante,
                  rules.ante, 1, 1);
          continue;
        }
        for (int cp = 0; cp < num_cards; ++cp) {
          if (cp == cx || cp == cy) continue;
          betting(rank_of(cx), rank_of(cy), rank_of(cp), prob, 0, "", "", 0,
                  rules.ante, rules.ante, 1, 1);
        }
      }
  }
};

Game build_poker(const std::string& name, const PokerRules& rules) {
  PokerWalk walk{rules, {}, {}, 0.0};
  walk.deal_all();
  Game g;
  g.name = name;
  g.x = Treeplex(walk.builder[0].specs);
  g.y = Treeplex(walk.builder[1].specs);
  g.scale = walk.max_abs_cost;
  g.x_infosets = static_cast<int>(walk.builder[0].infoset_first.size());
  g.y_infosets = static_cast<int>(walk.builder[1].infoset_first.size());
  std::vector<int> ri, ci;
  std::vector<double> vals;
  for (const auto& [rc, v] : walk.entries) {
    if (v == 0.0) continue;  // showdown ties cancel exactly
    ri.push_back(rc.first);
    ci.push_back(rc.second);
    vals.push_back(v / g.scale);
  }
  g.payoff = SparseMatrix(g.x.dim(), g.y.dim(), ri, ci, vals);
  return g;
}

}  // namespace

Game make_kuhn() { return build_poker("kuhn", {3, 1, {1.0}, 1, 1.0}); }

Game make_leduc() { return build_poker("leduc", {3, 2, {2.0, 4.0}, 2, 1.0}); }

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void parse_fail(const std::string& path, int line,
                             const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void save_game(const Game& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "seqform-game\n";
  out << "name " << game.name << "\n";
  out << "scale " << format_double(game.scale) << "\n";
  out << "infosets " << game.x_infosets << " " << game.y_infosets << "\n";
  out << "dims " << game.x_dim() << " " << game.y_dim() << "\n";
  out << "x-simplexes " << game.x.simplex_count() << "\n";
  for (const SimplexSpec& sp : game.x.specs())
    out << sp.actions << " " << sp.parent << "\n";
  out << "y-simplexes " << game.y.simplex_count() << "\n";
  for (const SimplexSpec& sp : game.y.specs())
    out << sp.actions << " " << sp.parent << "\n";
  out << "entries " << game.payoff.nonzeros() << "\n";
  for (int k = 0; k < game.payoff.nonzeros(); ++k)
    out << game.payoff.entry_row(k) << " " << game.payoff.entry_col(k) << " "
        << format_double(game.payoff.entry_value(k)) << "\n";
  if (!out) throw std::runtime_error("failed while writing " + path);
}

Game load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  int lineno = 0;
  auto next_line = [&](std::string& line) {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  std::string line;
  if (!next_line(line) || line != "seqform-game")
    parse_fail(path, lineno, "expected header line 'seqform-game'");

  Game g;
  int dim_x = 0, dim_y = 0;
  std::vector<SimplexSpec> sx, sy;
  std::vector<int> ri, ci;
  std::vector<double> vals;
  bool have_dims = false, have_x = false, have_y = false, have_entries = false;

  while (next_line(line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "name") {
      std::string rest;
      std::getline(ls, rest);
      size_t p = rest.find_first_not_of(' ');
      g.name = p == std::string::npos ? "" : rest.substr(p);
    } else if (tag == "scale") {
      if (!(ls >> g.scale) || !(g.scale > 0.0))
        parse_fail(path, lineno, "scale must be a positive number");
    } else if (tag == "infosets") {
      if (!(ls >> g.x_infosets >> g.y_infosets))
        parse_fail(path, lineno, "expected two infoset counts");
    } else if (tag == "dims") {
      if (!(ls >> dim_x >> dim_y) || dim_x < 1 || dim_y < 1)
        parse_fail(path, lineno, "expected two positive dimensions");
      have_dims = true;
    } else if (tag == "x-simplexes" || tag == "y-simplexes") {
      int count = 0;
      if (!(ls >> count) || count < 1)
        parse_fail(path, lineno, "expected a positive simplex count");
      std::vector<SimplexSpec>& dst = tag[0] == 'x' ? sx : sy;
      (tag[0] == 'x' ? have_x : have_y) = true;
      for (int s = 0; s < count; ++s) {
        if (!next_line(line))
          parse_fail(path, lineno, "file ends inside a simplex block");
        std::istringstream es(line);
        SimplexSpec sp;
        if (!(es >> sp.actions >> sp.parent))
          parse_fail(path, lineno, "expected 'actions parent'");
        dst.push_back(sp);
      }
    } else if (tag == "entries") {
      int count = 0;
      if (!(ls >> count) || count < 0)
        parse_fail(path, lineno, "expected an entry count");
      have_entries = true;
      for (int k = 0; k < count; ++k) {
        if (!next_line(line))
          parse_fail(path, lineno, "file ends inside the entry block");
        std::istringstream es(line);
        int r, c;
        double v;
        if (!(es >> r >> c >> v))
          parse_fail(path, lineno, "expected 'row col value'");
        ri.push_back(r);
        ci.push_back(c);
        vals.push_back(v);
      }
    } else {
      parse_fail(path, lineno, "unknown section '" + tag + "'");
    }
  }
  if (!have_dims) parse_fail(path, lineno, "missing 'dims' section");
  if (!have_x || !have_y)
    parse_fail(path, lineno, "missing a simplex block");
  if (!have_entries) parse_fail(path, lineno, "missing 'entries' section");

  try {
    g.x = Treeplex(sx);
    g.y = Treeplex(sy);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (g.x.dim() != dim_x || g.y.dim() != dim_y)
    throw std::runtime_error(path + ": declared dims " + std::to_string(dim_x) +
                             "x" + std::to_string(dim_y) +
                             " do not match the simplex blocks");
  try {
    g.payoff = SparseMatrix(dim_x, dim_y, ri, ci, vals);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  if (g.name.empty()) g.name = "custom";
  if (g.x_infosets == 0) g.x_infosets = g.x.simplex_count();
  if (g.y_infosets == 0) g.y_infosets = g.y.simplex_count();
  return g;
}

Game make_game(const std::string& spec) {
  if (spec == "rps") return make_rps();
  if (spec == "kuhn") return make_kuhn();
  if (spec == "leduc") return make_leduc();
  return load_game(spec);
}

}  // namespace seqform
