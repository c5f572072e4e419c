#pragma once

#include <vector>

#include "seqform/treeplex.h"

namespace seqform {

enum class RegularizerKind {
  // Half squared Euclidean distance on the realization plan.
  kEuclidean,
  // Generalized negative entropy on the realization plan.
  kEntropy,
  // Per-simplex half squared distance between behavioral strategies,
  // weighted by the parent sequence mass and a per-simplex coefficient.
  kDilatedEuclidean,
  // Per-simplex KL divergence between behavioral strategies, weighted the
  // same way.
  kDilatedEntropy,
};

const char* regularizer_name(RegularizerKind kind);
bool regularizer_requires_positive_center(RegularizerKind kind);

struct ProxResult {
  std::vector<double> z;  // argmin as a realization plan
  std::vector<double> q;  // the same point, behavioral
  // Per-index linear loads after backing up child simplex values; for the
  // two flat kinds this is just f.
  std::vector<double> values;
};

// argmin over the treeplex of  eta * <z, f> + D(z, z_hat)  for the chosen
// divergence D. alpha holds per-simplex weights for the dilated kinds (empty
// means all ones; ignored by the flat kinds). The entropy kinds clamp z_hat
// at 1e-300 before taking logarithms, so boundary centers do not fault but
// keep their support.
ProxResult prox(const Treeplex& tp, RegularizerKind kind,
                const std::vector<double>& z_hat, const std::vector<double>& f,
                double eta, const std::vector<double>& alpha = {});

// D(z, z_ref). Entropy kinds return +infinity when z puts mass where z_ref
// has none. The dilated kinds read behavioral strategies off both arguments
// with the uniform convention on unreached simplexes.
double bregman(const Treeplex& tp, RegularizerKind kind,
               const std::vector<double>& z, const std::vector<double>& z_ref,
               const std::vector<double>& alpha = {});

// Exact Euclidean projection onto the probability simplex. Ties at the
// support boundary resolve toward the larger support.
std::vector<double> project_to_simplex(const std::vector<double>& v);

// Single-simplex prox steps: argmin over the simplex of
// step * <q, load> + d(q, q_hat) for the base divergence d.
std::vector<double> simplex_prox_euclidean(const std::vector<double>& q_hat,
                                           const std::vector<double>& load,
                                           double step);
std::vector<double> simplex_prox_entropy(const std::vector<double>& q_hat,
                                         const std::vector<double>& load,
                                         double step);

}  // namespace seqform
