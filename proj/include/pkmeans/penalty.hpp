#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pkmeans/clustering.hpp"
#include "pkmeans/dataset.hpp"
#include "pkmeans/geometry.hpp"

namespace pkmeans {

// Smallest pairwise Euclidean distance between centroids; the L that sets
// the additive penalty coefficient.
inline double estimate_L(std::span<const double> centroids, std::size_t dim) {
  if (dim == 0 || centroids.size() % dim != 0)
    throw std::invalid_argument("estimate_L: centroid block does not match dimension");
  const std::size_t k = centroids.size() / dim;
  if (k < 2) throw std::invalid_argument("estimate_L: need at least 2 centroids");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a + 1 < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      best = std::min(best, squared_distance(centroids.subspan(a * dim, dim),
                                             centroids.subspan(b * dim, dim)));
  return std::sqrt(best);
}

enum class PenaltyMode { additive, multiplicative };

struct PenaltyCurve {
  std::vector<int> ks;
  std::vector<double> raw;
  std::vector<double> penalized;
  PenaltyFamily family;
  PenaltyMode mode = PenaltyMode::additive;
  double lambda = 0.0;  // additive only

  // Lowest k on ties, for determinism.
  int argmin_k() const {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < penalized.size(); ++i)
      if (penalized[i] < penalized[arg]) arg = i;
    return ks[arg];
  }
};

inline PenaltyCurve additive_curve(std::span<const int> ks, std::span<const double> raw,
                                   double lambda, PenaltyFamily family = {}) {
  if (ks.size() != raw.size() || ks.empty())
    throw std::invalid_argument("additive_curve: ks and raw errors must match and be nonempty");
  if (!(lambda > 0.0)) throw std::invalid_argument("additive_curve: lambda must be > 0");
  PenaltyCurve c;
  c.ks.assign(ks.begin(), ks.end());
  c.raw.assign(raw.begin(), raw.end());
  c.family = family;
  c.mode = PenaltyMode::additive;
  c.lambda = lambda;
  c.penalized.resize(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i)
    c.penalized[i] = raw[i] + lambda * family(static_cast<double>(ks[i]));
  return c;
}

inline PenaltyCurve multiplicative_curve(std::span<const int> ks, std::span<const double> raw,
                                         PenaltyFamily family = {}) {
  if (ks.size() != raw.size() || ks.empty())
    throw std::invalid_argument("multiplicative_curve: ks and raw errors must match and be nonempty");
  PenaltyCurve c;
  c.ks.assign(ks.begin(), ks.end());
  c.raw.assign(raw.begin(), raw.end());
  c.family = family;
  c.mode = PenaltyMode::multiplicative;
  c.penalized.resize(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i)
    c.penalized[i] = family(static_cast<double>(ks[i])) * raw[i];
  return c;
}

// Minima of a penalized curve. Endpoints of the scanned range cannot be
// confirmed as minima, so they are reported but excluded from candidates.
struct CurveMinima {
  int global_min = 0;
  bool global_interior = false;
  std::vector<int> interior_local_minima;

  std::vector<int> candidates() const {
    std::vector<int> out = interior_local_minima;
    if (global_interior &&
        std::find(out.begin(), out.end(), global_min) == out.end()) {
      out.push_back(global_min);
      std::sort(out.begin(), out.end());
    }
    return out;
  }
};

inline CurveMinima curve_minima(const PenaltyCurve& c) {
  CurveMinima m;
  m.global_min = c.argmin_k();
  const std::size_t n = c.penalized.size();
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (c.penalized[i] < c.penalized[i - 1] && c.penalized[i] < c.penalized[i + 1])
      m.interior_local_minima.push_back(c.ks[i]);
  m.global_interior =
      n >= 3 && m.global_min != c.ks.front() && m.global_min != c.ks.back();
  return m;
}

struct ScanRow {
  int assumed_k = 0;
  double L = 0.0;  // dumbbell half-separation used in lambda
  double lambda = 0.0;
  int estimated_k = 0;
  bool is_candidate = false;
};

// The assumed-vs-estimated scan over raw errors. L_of(K) supplies the
// dumbbell half-separation L for the assumed K; lambda is the approximate
// midpoint with the rho^2 term dropped, V taken as N/K.
template <typename LFn>
std::vector<ScanRow> additive_scan_with(std::span<const int> ks, std::span<const double> raw,
                                        double n_points, int K_max, PenaltyFamily family,
                                        LFn&& L_of) {
  if (K_max < 2) throw std::invalid_argument("additive_scan: K_max must be >= 2");
  if (ks.size() != raw.size() || ks.empty())
    throw std::invalid_argument("additive_scan: ks and raw errors must match and be nonempty");
  std::vector<ScanRow> rows;
  rows.reserve(K_max - 1);
  for (int K = 2; K <= K_max; ++K) {
    ScanRow row;
    row.assumed_k = K;
    row.L = L_of(K);
    const double df_down = family(static_cast<double>(K)) - family(K - 1.0);
    row.lambda = (n_points / K) * row.L * row.L / df_down;
    row.estimated_k = additive_curve(ks, raw, row.lambda, family).argmin_k();
    row.is_candidate = (row.estimated_k == K);
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<ScanRow> additive_scan(const Dataset& data,
                                          const std::vector<ClusteringResult>& sweep_results,
                                          int K_max, PenaltyFamily family = {}) {
  if (sweep_results.empty()) throw std::invalid_argument("additive_scan: empty sweep");
  std::vector<int> ks;
  std::vector<double> raw;
  ks.reserve(sweep_results.size());
  raw.reserve(sweep_results.size());
  for (const auto& r : sweep_results) {
    ks.push_back(r.k);
    raw.push_back(r.error);
  }
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (ks[i] != ks[i - 1] + 1)
      throw std::invalid_argument("additive_scan: sweep ks must be consecutive");
  if (ks.front() > 2 || ks.back() < K_max)
    throw std::invalid_argument("additive_scan: sweep must cover k = 2..K_max");

  // The closest fitted pair is the pair a k = K-1 merge would fuse; the
  // dumbbell L of that merge is half their distance.
  auto L_of = [&](int K) {
    const auto& r = sweep_results[static_cast<std::size_t>(K - ks.front())];
    return 0.5 * estimate_L(r.centroids, r.dim);
  };
  return additive_scan_with(ks, raw, static_cast<double>(data.size()), K_max, family, L_of);
}

struct Disambiguation {
  std::vector<int> agreed;
  std::optional<int> final_estimate;
};

// Intersection of additive candidates with multiplicative minima; the final
// estimate exists only when the intersection is a singleton.
inline Disambiguation disambiguate(std::vector<int> additive, std::vector<int> multiplicative) {
  std::sort(additive.begin(), additive.end());
  std::sort(multiplicative.begin(), multiplicative.end());
  Disambiguation d;
  std::set_intersection(additive.begin(), additive.end(), multiplicative.begin(),
                        multiplicative.end(), std::back_inserter(d.agreed));
  d.agreed.erase(std::unique(d.agreed.begin(), d.agreed.end()), d.agreed.end());
  if (d.agreed.size() == 1) d.final_estimate = d.agreed.front();
  return d;
}

struct EstimationReport {
  std::vector<int> ks;
  std::vector<double> raw_errors;
  std::vector<ScanRow> scan;
  std::vector<int> additive_candidates;
  PenaltyCurve multiplicative;
  int mult_global_min = 0;
  bool mult_global_interior = false;
  std::vector<int> mult_local_minima;
  std::vector<int> mult_candidates;
  std::vector<int> agreed;
  std::optional<int> final_estimate;
  PenaltyFamily family;
  double n_points = 0.0;
};

// Full penalty-side analysis of one sweep: scan, multiplicative minima,
// and the agreement step.
inline EstimationReport estimate_report(const Dataset& data,
                                        const std::vector<ClusteringResult>& sweep_results,
                                        int K_max, PenaltyFamily family = {}) {
  EstimationReport rep;
  rep.family = family;
  rep.n_points = static_cast<double>(data.size());
  for (const auto& r : sweep_results) {
    rep.ks.push_back(r.k);
    rep.raw_errors.push_back(r.error);
  }
  rep.scan = additive_scan(data, sweep_results, K_max, family);
  for (const auto& row : rep.scan)
    if (row.is_candidate) rep.additive_candidates.push_back(row.assumed_k);

  rep.multiplicative = multiplicative_curve(rep.ks, rep.raw_errors, family);
  const CurveMinima mm = curve_minima(rep.multiplicative);
  rep.mult_global_min = mm.global_min;
  rep.mult_global_interior = mm.global_interior;
  rep.mult_local_minima = mm.interior_local_minima;
  rep.mult_candidates = mm.candidates();

  const Disambiguation dis = disambiguate(rep.additive_candidates, rep.mult_candidates);
  rep.agreed = dis.agreed;
  rep.final_estimate = dis.final_estimate;
  return rep;
}

}  // namespace pkmeans
