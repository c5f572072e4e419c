#include "seqform/treeplex.h"

#include <cmath>
#include <stdexcept>

namespace seqform {

Treeplex::Treeplex(std::vector<SimplexSpec> specs) : specs_(std::move(specs)) {
  if (specs_.empty()) throw std::invalid_argument("treeplex has no simplexes");
  first_.reserve(specs_.size());
  int next = 1;
  for (size_t s = 0; s < specs_.size(); ++s) {
    const SimplexSpec& sp = specs_[s];
    if (sp.actions < 1)
      throw std::invalid_argument("simplex " + std::to_string(s) +
                                  " has fewer than one action");
    if (sp.parent < 0 || sp.parent >= next)
      throw std::invalid_argument(
          "simplex " + std::to_string(s) + " has parent index " +
          std::to_string(sp.parent) +
          " that does not precede it (parents must be listed first)");
    first_.push_back(next);
    next += sp.actions;
  }
  dim_ = next - 1;
  owner_.assign(dim_, 0);
  children_.assign(dim_, {});
  for (size_t s = 0; s < specs_.size(); ++s) {
    for (int i = first_[s]; i < first_[s] + specs_[s].actions; ++i)
      owner_[i - 1] = static_cast<int>(s);
    if (specs_[s].parent == 0)
      roots_.push_back(static_cast<int>(s));
    else
      children_[specs_[s].parent - 1].push_back(static_cast<int>(s));
  }
}

std::string realization_violation(const Treeplex& tp,
                                  const std::vector<double>& z, double tol) {
  if (static_cast<int>(z.size()) != tp.dim())
    return "vector has length " + std::to_string(z.size()) + ", expected " +
           std::to_string(tp.dim());
  for (int i = 1; i <= tp.dim(); ++i) {
    double v = z[i - 1];
    if (!std::isfinite(v))
      return "index " + std::to_string(i) + " is not finite";
    if (v < -tol)
      return "index " + std::to_string(i) + " is negative (" +
             std::to_string(v) + ")";
  }
  for (int s = 0; s < tp.simplex_count(); ++s) {
    double sum = 0.0;
    for (int i = tp.first_index(s); i < tp.first_index(s) + tp.actions(s); ++i)
      sum += z[i - 1];
    double parent_mass = tp.parent(s) == 0 ? 1.0 : z[tp.parent(s) - 1];
    if (std::fabs(sum - parent_mass) > tol)
      return "simplex " + std::to_string(s) + " sums to " +
             std::to_string(sum) + " but its parent sequence has mass " +
             std::to_string(parent_mass);
  }
  return "";
}

bool is_realization(const Treeplex& tp, const std::vector<double>& z,
                    double tol) {
  return realization_violation(tp, z, tol).empty();
}

std::vector<double> behavioral_from_sequence(const Treeplex& tp,
                                             const std::vector<double>& z) {
  std::vector<double> q(tp.dim());
  for (int s = 0; s < tp.simplex_count(); ++s) {
    double parent_mass = tp.parent(s) == 0 ? 1.0 : z[tp.parent(s) - 1];
    int first = tp.first_index(s);
    if (parent_mass > 0.0) {
      for (int i = first; i < first + tp.actions(s); ++i)
        q[i - 1] = z[i - 1] / parent_mass;
    } else {
      double u = 1.0 / tp.actions(s);
      for (int i = first; i < first + tp.actions(s); ++i) q[i - 1] = u;
    }
  }
  return q;
}

std::vector<double> sequence_from_behavioral(const Treeplex& tp,
                                             const std::vector<double>& q) {
  std::vector<double> z(tp.dim());
  for (int s = 0; s < tp.simplex_count(); ++s) {
    double parent_mass = tp.parent(s) == 0 ? 1.0 : z[tp.parent(s) - 1];
    int first = tp.first_index(s);
    for (int i = first; i < first + tp.actions(s); ++i)
      z[i - 1] = q[i - 1] * parent_mass;
  }
  return z;
}

std::vector<double> uniform_behavioral(const Treeplex& tp) {
  std::vector<double> q(tp.dim());
  for (int s = 0; s < tp.simplex_count(); ++s) {
    double u = 1.0 / tp.actions(s);
    for (int i = tp.first_index(s); i < tp.first_index(s) + tp.actions(s); ++i)
      q[i - 1] = u;
  }
  return q;
}

std::vector<double> uniform_sequence(const Treeplex& tp) {
  return sequence_from_behavioral(tp, uniform_behavioral(tp));
}

}  // namespace seqform
