#pragma once

#include <string>
#include <vector>

#include "seqform/treeplex.h"

namespace seqform {

// Sparse matrix in coordinate form, kept sorted row-major, with compressed
// offsets for both row-wise (G*y) and column-wise (G^T*x) products.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, std::vector<int> row_idx,
               std::vector<int> col_idx, std::vector<double> values);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nonzeros() const { return static_cast<int>(values_.size()); }

  // 1-based coordinates of the k-th stored entry, row-major order.
  int entry_row(int k) const { return row_[k]; }
  int entry_col(int k) const { return col_[k]; }
  double entry_value(int k) const { return values_[k]; }

  std::vector<double> multiply_right(const std::vector<double>& y) const;
  std::vector<double> multiply_transpose(const std::vector<double>& x) const;

  double max_abs_entry() const;
  double sum_abs_entries() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<int> row_, col_;      // 1-based, sorted row-major
  std::vector<double> values_;
  std::vector<int> row_offset_;     // CSR offsets into the arrays above
  std::vector<int> col_offset_;     // CSC offsets into col_order_
  std::vector<int> col_order_;      // entry permutation sorted column-major
};

// A two-player zero-sum game in sequence form. x minimizes and y maximizes
// x^T G y, where G holds the normalized cost to x: entries are raw payoffs
// divided by scale = max absolute raw payoff, so max |G_ij| <= 1.
struct Game {
  std::string name;
  Treeplex x;
  Treeplex y;
  SparseMatrix payoff;
  double scale = 1.0;
  // Decision points per player. For the bundled poker games this excludes
  // the one-action simplex that carries the empty sequence.
  int x_infosets = 0;
  int y_infosets = 0;

  int x_dim() const { return x.dim(); }
  int y_dim() const { return y.dim(); }
  int pair_dim() const { return x.dim() + y.dim(); }
};

// One-shot matrix game: each player's treeplex is a single simplex. cost[i][j]
// is the raw cost to the row player; entries are normalized as above.
Game make_matrix_game(const std::string& name,
                      const std::vector<std::vector<double>>& cost);

// Rock-paper-scissors with win/loss payoff 1.
Game make_rps();

// Three-rank one-card poker: ante 1, one bet of 1, one raise allowed.
// 13 sequences and 6 decision points per player.
Game make_kuhn();

// Two-round, six-card poker with one public card: ante 1, bet sizes 2 and 4,
// at most two raises per round. 337 sequences and 144 decision points per
// player.
Game make_leduc();

// Text format round trip (see README for the layout).
Game load_game(const std::string& path);
void save_game(const Game& game, const std::string& path);

// "rps", "kuhn", "leduc", or a path to a game file.
Game make_game(const std::string& spec);

// x^T G y.
double bilinear_value(const Game& game, const std::vector<double>& x,
                      const std::vector<double>& y);

// The saddle-point gradient field F(x, y) = (G y, -G^T x), stacked as one
// vector of length pair_dim(). With normalized payoffs and realization plans
// as inputs, every component lies in [-1, 1].
std::vector<double> payoff_field(const Game& game, const std::vector<double>& x,
                                 const std::vector<double>& y);

}  // namespace seqform
