#include "seqform/regularizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace seqform {

namespace {

constexpr double kLogFloor = 1e-300;  // clamp before logarithms

double safe_log(double v) { return std::log(std::max(v, kLogFloor)); }

void check_prox_args(const Treeplex& tp, const std::vector<double>& z_hat,
                     const std::vector<double>& f, double eta,
                     const std::vector<double>& alpha) {
  if (static_cast<int>(z_hat.size()) != tp.dim())
    throw std::invalid_argument("prox center has the wrong length");
  if (static_cast<int>(f.size()) != tp.dim())
    throw std::invalid_argument("loss vector has the wrong length");
  if (!(eta > 0.0)) throw std::invalid_argument("step size must be positive");
  if (!alpha.empty() &&
      static_cast<int>(alpha.size()) != tp.simplex_count())
    throw std::invalid_argument(
        "alpha must hold one weight per simplex when given");
  for (double a : alpha)
    if (!(a > 0.0))
      throw std::invalid_argument("alpha weights must be positive");
}

}  // namespace

const char* regularizer_name(RegularizerKind kind) {
  switch (kind) {
    case RegularizerKind::kEuclidean: return "euclidean";
    case RegularizerKind::kEntropy: return "entropy";
    case RegularizerKind::kDilatedEuclidean: return "dilated-euclidean";
    case RegularizerKind::kDilatedEntropy: return "dilated-entropy";
  }
  return "unknown";
}

bool regularizer_requires_positive_center(RegularizerKind kind) {
  return kind == RegularizerKind::kEntropy ||
         kind == RegularizerKind::kDilatedEntropy;
}

std::vector<double> project_to_simplex(const std::vector<double>& v) {
  int n = static_cast<int>(v.size());
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double running = 0.0, tau = 0.0;
  for (int k = 0; k < n; ++k) {
    running += u[k];
    double cand = (1.0 - running) / (k + 1);
    if (u[k] + cand > 0.0) tau = cand;
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = std::max(v[i] + tau, 0.0);
  // The threshold guarantees feasibility analytically; remove the float
  // residual without disturbing exact zeros.
  double s = std::accumulate(out.begin(), out.end(), 0.0);
  if (s > 0.0)
    for (double& x : out) x /= s;
  else
    for (double& x : out) x = 1.0 / n;
  return out;
}

std::vector<double> simplex_prox_euclidean(const std::vector<double>& q_hat,
                                           const std::vector<double>& load,
                                           double step) {
  std::vector<double> v(q_hat.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = q_hat[i] - step * load[i];
  return project_to_simplex(v);
}

std::vector<double> simplex_prox_entropy(const std::vector<double>& q_hat,
                                         const std::vector<double>& load,
                                         double step) {
  size_t n = q_hat.size();
  std::vector<double> s(n);
  double m = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    s[i] = safe_log(q_hat[i]) - step * load[i];
    m = std::max(m, s[i]);
  }
  double total = 0.0;
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    out[i] = std::exp(s[i] - m);
    total += out[i];
  }
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::runtime_error("entropy step produced an empty distribution");
  for (double& x : out) x /= total;
  return out;
}

namespace {

// Increasing continuous piecewise-linear function given by knots plus a
// slope extending past the last knot. Queries left of the first knot clamp
// to the first value.
struct PwlFunc {
  std::vector<double> x, y;
  double final_slope = 1.0;

  double eval(double t) const {
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back() + final_slope * (t - x.back());
    size_t hi = std::upper_bound(x.begin(), x.end(), t) - x.begin();
    size_t lo = hi - 1;
    double dx = x[hi] - x[lo];
    if (dx <= 0.0) return y[hi];
    return y[lo] + (t - x[lo]) / dx * (y[hi] - y[lo]);
  }

  double inverse(double v) const {
    if (v <= y.front()) return x.front();
    if (v >= y.back()) {
      if (final_slope <= 0.0) return x.back();
      return x.back() + (v - y.back()) / final_slope;
    }
    size_t hi = std::upper_bound(y.begin(), y.end(), v) - y.begin();
    size_t lo = hi - 1;
    double dy = y[hi] - y[lo];
    if (dy <= 0.0) return x[hi];
    return x[lo] + (v - y[lo]) / dy * (x[hi] - x[lo]);
  }
};

std::vector<double> merge_knots(const std::vector<const PwlFunc*>& fs,
                                bool with_zero) {
  std::vector<double> xs;
  if (with_zero) xs.push_back(0.0);
  for (const PwlFunc* f : fs)
    xs.insert(xs.end(), f->x.begin(), f->x.end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Exact Euclidean projection onto the treeplex via marginal-cost functions.
//
// For each index i, D_i(t) is the derivative of the optimal cost of putting
// mass t on i: (t - v_i) plus the multipliers of the child simplexes at that
// mass. Within a simplex, mass m is split so that every active index has
// equal marginal cost lambda with sum m; lambda as a function of m is the
// simplex's own multiplier curve, which feeds the next level up.
std::vector<double> project_to_treeplex(const Treeplex& tp,
                                        const std::vector<double>& v) {
  int dim = tp.dim();
  int ns = tp.simplex_count();
  std::vector<PwlFunc> marginal(dim);  // D_i
  std::vector<PwlFunc> multiplier(ns);  // lambda_h

  for (int s = ns - 1; s >= 0; --s) {
    int first = tp.first_index(s);
    // Marginal cost per index in this simplex.
    for (int i = first; i < first + tp.actions(s); ++i) {
      std::vector<const PwlFunc*> kids;
      for (int g : tp.children(i)) kids.push_back(&multiplier[g]);
      PwlFunc& d = marginal[i - 1];
      d.x = merge_knots(kids, true);
      d.y.resize(d.x.size());
      for (size_t k = 0; k < d.x.size(); ++k) {
        double val = d.x[k] - v[i - 1];
        for (const PwlFunc* f : kids) val += f->eval(d.x[k]);
        d.y[k] = val;
      }
      d.final_slope = 1.0;
      for (const PwlFunc* f : kids) d.final_slope += f->final_slope;
    }
    // Allocation response t_i(lambda) is the clamped inverse of D_i; the
    // simplex multiplier curve inverts their sum.
    std::vector<PwlFunc> alloc(tp.actions(s));
    std::vector<const PwlFunc*> alloc_ptr;
    for (int a = 0; a < tp.actions(s); ++a) {
      const PwlFunc& d = marginal[first + a - 1];
      alloc[a].x = d.y;
      alloc[a].y = d.x;
      alloc[a].final_slope = 1.0 / d.final_slope;
      alloc_ptr.push_back(&alloc[a]);
    }
    std::vector<double> lambdas = merge_knots(alloc_ptr, false);
    PwlFunc total;  // mass as a function of lambda
    total.x = lambdas;
    total.y.resize(lambdas.size());
    for (size_t k = 0; k < lambdas.size(); ++k) {
      double m = 0.0;
      for (const PwlFunc& a : alloc) m += a.eval(lambdas[k]);
      total.y[k] = m;
    }
    total.final_slope = 0.0;
    for (const PwlFunc& a : alloc) total.final_slope += a.final_slope;

    PwlFunc& lam = multiplier[s];
    lam.x.clear();
    lam.y.clear();
    for (size_t k = 0; k < total.x.size(); ++k) {
      if (!lam.x.empty() && total.y[k] <= lam.x.back()) continue;
      lam.x.push_back(total.y[k]);
      lam.y.push_back(total.x[k]);
    }
    lam.final_slope = 1.0 / total.final_slope;
  }

  // Walk down, splitting each simplex's available mass at its level.
  std::vector<double> z(dim, 0.0);
  for (int s = 0; s < ns; ++s) {
    double m = tp.parent(s) == 0 ? 1.0 : z[tp.parent(s) - 1];
    int first = tp.first_index(s);
    if (m <= 0.0) continue;  // whole subtree stays at zero
    double lambda = multiplier[s].eval(m);
    double sum = 0.0;
    for (int i = first; i < first + tp.actions(s); ++i) {
      const PwlFunc& d = marginal[i - 1];
      double t = lambda <= d.y.front() ? 0.0 : d.inverse(lambda);
      z[i - 1] = t;
      sum += t;
    }
    if (sum > 0.0) {
      double fix = m / sum;
      for (int i = first; i < first + tp.actions(s); ++i) z[i - 1] *= fix;
    } else {
      for (int i = first; i < first + tp.actions(s); ++i)
        z[i - 1] = m / tp.actions(s);
    }
  }
  return z;
}

// Treeplex prox for the flat entropy kind. Stationarity gives
//   ln z_i = lw_i + lv[owner(i)] - sum of lv over i's child simplexes,
// with lw_i = ln z_hat_i - eta f_i and one unknown lv per simplex. Fixing
// all other simplexes, the flow constraint of simplex h is solved exactly
// by lv[h] = (B - A)/2 (or -A at the root); sweeping children-first
// converges geometrically.
std::vector<double> entropy_prox(const Treeplex& tp,
                                 const std::vector<double>& z_hat,
                                 const std::vector<double>& f, double eta) {
  int dim = tp.dim();
  int ns = tp.simplex_count();
  std::vector<double> lw(dim);
  for (int i = 0; i < dim; ++i) lw[i] = safe_log(z_hat[i]) - eta * f[i];

  std::vector<double> lv(ns, 0.0);
  // child_sum[i] = sum of lv over the simplexes hanging below index i.
  std::vector<double> child_sum(dim, 0.0);

  auto realize = [&](std::vector<double>& z) {
    for (int i = 1; i <= dim; ++i)
      z[i - 1] = std::exp(lw[i - 1] + lv[tp.owner(i)] - child_sum[i - 1]);
  };
  auto flow_residual = [&](const std::vector<double>& z) {
    double r = 0.0;
    for (int s = 0; s < ns; ++s) {
      double sum = 0.0;
      int first = tp.first_index(s);
      for (int i = first; i < first + tp.actions(s); ++i) sum += z[i - 1];
      double parent = tp.parent(s) == 0 ? 1.0 : z[tp.parent(s) - 1];
      r = std::max(r, std::fabs(sum - parent));
    }
    return r;
  };

  std::vector<double> z(dim);
  // The sweep contracts geometrically, but the rate degrades with treeplex
  // depth (Leduc needs ~500 sweeps for 1e-13 where Kuhn needs ~40). Checking
  // the flow residual costs about as much as a sweep, so test it in batches.
  const int kMaxSweeps = 5000;
  const int kCheckEvery = 8;
  double residual = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (int s = ns - 1; s >= 0; --s) {
      int first = tp.first_index(s);
      double m = -std::numeric_limits<double>::infinity();
      for (int i = first; i < first + tp.actions(s); ++i)
        m = std::max(m, lw[i - 1] - child_sum[i - 1]);
      double acc = 0.0;
      for (int i = first; i < first + tp.actions(s); ++i)
        acc += std::exp(lw[i - 1] - child_sum[i - 1] - m);
      double a = m + std::log(acc);
      double fresh;
      int p = tp.parent(s);
      if (p == 0) {
        fresh = -a;
      } else {
        double b = lw[p - 1] + lv[tp.owner(p)] - (child_sum[p - 1] - lv[s]);
        fresh = 0.5 * (b - a);
      }
      double delta = fresh - lv[s];
      lv[s] = fresh;
      if (p != 0) child_sum[p - 1] += delta;
    }
    if (sweep % kCheckEvery == kCheckEvery - 1 || sweep == kMaxSweeps - 1) {
      realize(z);
      residual = flow_residual(z);
      if (residual < 1e-13) break;
      if (!std::isfinite(residual))
        throw std::runtime_error("entropy prox diverged");
    }
  }
  if (!(residual < 1e-10))
    throw std::runtime_error(
        "entropy prox stalled above a 1e-10 flow residual");
  return z;
}

}  // namespace

ProxResult prox(const Treeplex& tp, RegularizerKind kind,
                const std::vector<double>& z_hat, const std::vector<double>& f,
                double eta, const std::vector<double>& alpha) {
  check_prox_args(tp, z_hat, f, eta, alpha);
  ProxResult res;
  switch (kind) {
    case RegularizerKind::kEuclidean: {
      std::vector<double> v(tp.dim());
      for (int i = 0; i < tp.dim(); ++i) v[i] = z_hat[i] - eta * f[i];
      res.z = project_to_treeplex(tp, v);
      res.values = f;
      break;
    }
    case RegularizerKind::kEntropy: {
      res.z = entropy_prox(tp, z_hat, f, eta);
      res.values = f;
      break;
    }
    case RegularizerKind::kDilatedEuclidean:
    case RegularizerKind::kDilatedEntropy: {
      bool entropy = kind == RegularizerKind::kDilatedEntropy;
      std::vector<double> q_hat = behavioral_from_sequence(tp, z_hat);
      std::vector<double> load = f;  // grows by backed-up child values
      std::vector<double> q(tp.dim());
      for (int s = tp.simplex_count() - 1; s >= 0; --s) {
        int first = tp.first_index(s);
        int n = tp.actions(s);
        double a_h = alpha.empty() ? 1.0 : alpha[s];
        double step = eta / a_h;
        std::vector<double> qh(q_hat.begin() + first - 1,
                               q_hat.begin() + first - 1 + n);
        std::vector<double> lh(load.begin() + first - 1,
                               load.begin() + first - 1 + n);
        double value;  // cost this simplex adds to its parent sequence
        std::vector<double> qs;
        if (entropy) {
          double m = -std::numeric_limits<double>::infinity();
          std::vector<double> sv(n);
          for (int j = 0; j < n; ++j) {
            sv[j] = safe_log(qh[j]) - step * lh[j];
            m = std::max(m, sv[j]);
          }
          double total = 0.0;
          qs.resize(n);
          for (int j = 0; j < n; ++j) {
            qs[j] = std::exp(sv[j] - m);
            total += qs[j];
          }
          if (!(total > 0.0) || !std::isfinite(total))
            throw std::runtime_error(
                "entropy step produced an empty distribution");
          for (double& x : qs) x /= total;
          value = -(a_h / eta) * (m + std::log(total));
        } else {
          qs = simplex_prox_euclidean(qh, lh, step);
          double quad = 0.0, lin = 0.0;
          for (int j = 0; j < n; ++j) {
            lin += qs[j] * lh[j];
            quad += (qs[j] - qh[j]) * (qs[j] - qh[j]);
          }
          value = lin + a_h / (2.0 * eta) * quad;
        }
        for (int j = 0; j < n; ++j) q[first - 1 + j] = qs[j];
        if (tp.parent(s) != 0) load[tp.parent(s) - 1] += value;
      }
      res.q = q;
      res.z = sequence_from_behavioral(tp, q);
      res.values = load;
      return res;
    }
  }
  res.q = behavioral_from_sequence(tp, res.z);
  return res;
}

double bregman(const Treeplex& tp, RegularizerKind kind,
               const std::vector<double>& z, const std::vector<double>& z_ref,
               const std::vector<double>& alpha) {
  if (static_cast<int>(z.size()) != tp.dim() ||
      static_cast<int>(z_ref.size()) != tp.dim())
    throw std::invalid_argument("vector length does not match the treeplex");
  if (!alpha.empty() &&
      static_cast<int>(alpha.size()) != tp.simplex_count())
    throw std::invalid_argument(
        "alpha must hold one weight per simplex when given");
  double inf = std::numeric_limits<double>::infinity();
  switch (kind) {
    case RegularizerKind::kEuclidean: {
      double d = 0.0;
      for (int i = 0; i < tp.dim(); ++i)
        d += (z[i] - z_ref[i]) * (z[i] - z_ref[i]);
      return 0.5 * d;
    }
    case RegularizerKind::kEntropy: {
      double d = 0.0;
      for (int i = 0; i < tp.dim(); ++i) {
        if (z[i] > 0.0) {
          if (z_ref[i] <= 0.0) return inf;
          d += z[i] * std::log(z[i] / z_ref[i]) - z[i] + z_ref[i];
        } else {
          d += z_ref[i];
        }
      }
      return d;
    }
    case RegularizerKind::kDilatedEuclidean:
    case RegularizerKind::kDilatedEntropy: {
      bool entropy = kind == RegularizerKind::kDilatedEntropy;
      std::vector<double> q = behavioral_from_sequence(tp, z);
      std::vector<double> q_ref = behavioral_from_sequence(tp, z_ref);
      double d = 0.0;
      for (int s = 0; s < tp.simplex_count(); ++s) {
        double mass = tp.parent(s) == 0 ? 1.0 : z[tp.parent(s) - 1];
        if (mass <= 0.0) continue;
        double a_h = alpha.empty() ? 1.0 : alpha[s];
        int first = tp.first_index(s);
        double local = 0.0;
        for (int i = first; i < first + tp.actions(s); ++i) {
          if (entropy) {
            if (q[i - 1] > 0.0) {
              if (q_ref[i - 1] <= 0.0) return inf;
              local += q[i - 1] * std::log(q[i - 1] / q_ref[i - 1]);
            }
          } else {
            local += 0.5 * (q[i - 1] - q_ref[i - 1]) * (q[i - 1] - q_ref[i - 1]);
          }
        }
        d += a_h * mass * local;
      }
      return d;
    }
  }
  return 0.0;
}

}  // namespace seqform
