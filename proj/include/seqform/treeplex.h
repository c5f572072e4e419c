#pragma once

#include <string>
#include <vector>

namespace seqform {

// One decision point: a contiguous block of action indices whose mass must
// sum to the mass of the parent sequence.
struct SimplexSpec {
  int actions = 0;
  int parent = 0;  // sequence index owning this simplex; 0 is the root
};

// A treeplex: a tree of simplexes expressed in sequence form. Sequence
// indices are 1-based; index 0 denotes the virtual root sequence, which has
// constant mass 1 and is never stored. A vector over the treeplex keeps the
// value for index i at position i-1.
class Treeplex {
 public:
  Treeplex() = default;

  // Simplexes must be listed parent-before-child: each parent index must
  // belong to an earlier simplex (or be 0). Throws std::invalid_argument
  // on malformed input.
  explicit Treeplex(std::vector<SimplexSpec> specs);

  int dim() const { return dim_; }
  int simplex_count() const { return static_cast<int>(specs_.size()); }

  int actions(int s) const { return specs_[s].actions; }
  int parent(int s) const { return specs_[s].parent; }
  int first_index(int s) const { return first_[s]; }
  const std::vector<SimplexSpec>& specs() const { return specs_; }

  // The simplex that contains sequence index i.
  int owner(int i) const { return owner_[i - 1]; }
  // Simplexes hanging below sequence index i (i.e. with parent i).
  const std::vector<int>& children(int i) const { return children_[i - 1]; }
  // Simplexes hanging directly below the virtual root.
  const std::vector<int>& root_simplexes() const { return roots_; }

  bool operator==(const Treeplex& other) const {
    return dim_ == other.dim_ && specs_.size() == other.specs_.size() &&
           [&] {
             for (size_t s = 0; s < specs_.size(); ++s) {
               if (specs_[s].actions != other.specs_[s].actions ||
                   specs_[s].parent != other.specs_[s].parent)
                 return false;
             }
             return true;
           }();
  }

 private:
  std::vector<SimplexSpec> specs_;
  std::vector<int> first_;                  // first sequence index per simplex
  std::vector<int> owner_;                  // owning simplex per index
  std::vector<std::vector<int>> children_;  // child simplexes per index
  std::vector<int> roots_;
  int dim_ = 0;
};

// Empty string when z is a valid realization plan (nonnegative, every
// simplex sums to its parent mass within tol), otherwise a description of
// the first violated constraint.
std::string realization_violation(const Treeplex& tp,
                                  const std::vector<double>& z,
                                  double tol = 1e-9);

bool is_realization(const Treeplex& tp, const std::vector<double>& z,
                    double tol = 1e-9);

// q_i = z_i / z_parent; uniform on simplexes whose parent mass is zero.
std::vector<double> behavioral_from_sequence(const Treeplex& tp,
                                             const std::vector<double>& z);

// z_i = q_i * z_parent, filled parent-before-child.
std::vector<double> sequence_from_behavioral(const Treeplex& tp,
                                             const std::vector<double>& q);

std::vector<double> uniform_behavioral(const Treeplex& tp);
std::vector<double> uniform_sequence(const Treeplex& tp);

}  // namespace seqform
