#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace pkmeans {

inline constexpr double kPi = 3.14159265358979323846;

// Penalty term f(k), monotonically increasing in k.
enum class PenaltyKind { linear, logarithmic, polynomial, exponential };

struct PenaltyFamily {
  PenaltyKind kind = PenaltyKind::linear;
  double exponent = 2.0;  // polynomial only

  double operator()(double k) const {
    switch (kind) {
      case PenaltyKind::linear: return k;
      case PenaltyKind::logarithmic: return std::log(k);
      case PenaltyKind::polynomial: return std::pow(k, exponent);
      case PenaltyKind::exponential: return std::exp(k);
    }
    return k;
  }

  std::string name() const {
    switch (kind) {
      case PenaltyKind::linear: return "linear";
      case PenaltyKind::logarithmic: return "log";
      case PenaltyKind::polynomial: return "poly" + format_exponent();
      case PenaltyKind::exponential: return "exp";
    }
    return "linear";
  }

  static PenaltyFamily parse(const std::string& s, double p = 2.0) {
    if (s == "linear") return {PenaltyKind::linear, p};
    if (s == "log") return {PenaltyKind::logarithmic, p};
    if (s == "poly" || s == "polynomial") {
      if (!(p > 0.0)) throw std::invalid_argument("penalty family: exponent must be > 0");
      return {PenaltyKind::polynomial, p};
    }
    if (s == "exp" || s == "exponential") return {PenaltyKind::exponential, p};
    throw std::invalid_argument("unknown penalty family '" + s +
                                "' (expected linear, log, poly, exp)");
  }

 private:
  std::string format_exponent() const {
    if (exponent == static_cast<long long>(exponent))
      return std::to_string(static_cast<long long>(exponent));
    return std::to_string(exponent);
  }
};

// Dimension-dependent constants of the uniform d-ball and half-ball.
struct GeometryConstants {
  int dim = 0;
  double radius = 0.0;
  double alpha = 0.0;       // d/(d+2)
  double gamma = 0.0;       // rho/R
  double beta = 0.0;        // (alpha - gamma^2)/2
  double rho = 0.0;         // R*gamma, half-ball centroid offset from the equator plane
  double volume = 0.0;      // full ball volume; underflows to 0 past d ~ 450 at R = 1
  double log_volume = 0.0;  // finite for any practical d, use for extreme dimensions

  // alpha/(2*beta). Uses alpha - 2*beta = gamma^2 so the d = 1 value is an
  // exact 4.0 instead of suffering cancellation in beta.
  double alpha_over_two_beta() const {
    return dim / (dim - (dim + 2.0) * gamma * gamma);
  }
};

// Closed-form constants for dimension d and radius R. Gamma-function ratios
// go through lgamma so large d cannot overflow.
inline GeometryConstants constants(int dim, double radius) {
  if (dim < 1) throw std::invalid_argument("constants: dimension must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("constants: radius must be > 0");

  const double half = 0.5 * dim;
  const double lgam_half_plus1 = std::lgamma(half + 1.0);  // log Gamma((d+2)/2)
  const double lgam_half_plus15 = std::lgamma(half + 1.5); // log Gamma((d+3)/2)

  GeometryConstants c;
  c.dim = dim;
  c.radius = radius;
  c.alpha = static_cast<double>(dim) / (dim + 2.0);
  c.gamma = std::exp(lgam_half_plus1 - lgam_half_plus15 - 0.5 * std::log(kPi));
  c.beta = 0.5 * (c.alpha - c.gamma * c.gamma);
  c.rho = radius * c.gamma;
  c.log_volume = half * std::log(kPi) - lgam_half_plus1 + dim * std::log(radius);
  c.volume = std::exp(c.log_volume);
  return c;
}

// Selects what stands in for the ball volume V in the error formulas:
// the continuous volume itself, or a point count (the dense-cluster
// equivalence of V and N_j).
class VolumeModel {
 public:
  static VolumeModel continuous() { return VolumeModel(true, 0.0); }
  static VolumeModel point_count(double n) {
    if (!(n > 0.0)) throw std::invalid_argument("VolumeModel: point count must be > 0");
    return VolumeModel(false, n);
  }

  double resolve(const GeometryConstants& c) const {
    return continuous_ ? c.volume : count_;
  }

 private:
  VolumeModel(bool continuous, double count) : continuous_(continuous), count_(count) {}
  bool continuous_;
  double count_;
};

// Errors of the three shapes an ideal cluster can take: full sphere,
// half-sphere (about its own centroid, V the full-sphere volume), and the
// dumbbell of two spheres whose centers sit L from the shared centroid.
struct ShapeErrors {
  double sphere = 0.0;
  double half_sphere = 0.0;
  double dumbbell = 0.0;
};

inline ShapeErrors shape_errors(const GeometryConstants& c, double L,
                                const VolumeModel& vm = VolumeModel::continuous()) {
  if (!(L > 0.0)) throw std::invalid_argument("shape_errors: L must be > 0");
  const double v = vm.resolve(c);
  const double r2 = c.radius * c.radius;
  ShapeErrors e;
  e.sphere = v * r2 * c.alpha;
  e.half_sphere = v * r2 * c.beta;
  e.dumbbell = 2.0 * v * r2 * c.alpha + 2.0 * v * L * L;
  return e;
}

// Unpenalized errors at k = K-1, K, K+1 for K ideal clusters, plus the two
// successive differences (both strictly positive).
struct ErrorLadder {
  double e_below = 0.0;      // E_{K-1}: K-2 spheres plus one dumbbell
  double e_at = 0.0;         // E_K: K spheres
  double e_above = 0.0;      // E_{K+1}: K-1 spheres plus two half-spheres
  double delta_merge = 0.0;  // E_{K-1} - E_K = 2 V L^2
  double delta_split = 0.0;  // E_K - E_{K+1} = V R^2 (alpha - 2 beta) = V rho^2
};

inline ErrorLadder error_ladder(const GeometryConstants& c, int K, double L,
                                const VolumeModel& vm = VolumeModel::continuous()) {
  if (K < 2) throw std::invalid_argument("error_ladder: K must be >= 2");
  if (!(L > 0.0)) throw std::invalid_argument("error_ladder: L must be > 0");
  const double v = vm.resolve(c);
  const double r2 = c.radius * c.radius;
  ErrorLadder lad;
  lad.e_at = K * v * r2 * c.alpha;
  lad.delta_merge = 2.0 * v * L * L;
  lad.e_below = lad.e_at + lad.delta_merge;
  lad.e_above = (K - 1) * v * r2 * c.alpha + 2.0 * v * r2 * c.beta;
  lad.delta_split = v * c.rho * c.rho;
  return lad;
}

// Admissible range for the additive penalty coefficient:
//   V rho^2 / (f(K+1) - f(K))  <  lambda  <  2 V L^2 / (f(K) - f(K-1)),
// evaluated with exact difference quotients for every family. `approx` is
// the midpoint with the rho^2 term dropped (for the linear family, N L^2 / K).
struct LambdaBounds {
  double lower = 0.0;
  double upper = 0.0;
  double midpoint = 0.0;
  double approx = 0.0;
  PenaltyFamily family;
  int assumed_k = 0;
  bool degenerate = false;  // lower >= upper; reported, never clamped
};

inline LambdaBounds lambda_bounds(double n_points, int K, const GeometryConstants& c,
                                  double L, PenaltyFamily family = {},
                                  std::optional<VolumeModel> vm = std::nullopt) {
  if (K < 2) throw std::invalid_argument("lambda_bounds: K must be >= 2");
  if (!(n_points >= K)) throw std::invalid_argument("lambda_bounds: need N >= K");
  if (!(L > 0.0)) throw std::invalid_argument("lambda_bounds: L must be > 0");

  const double v = vm ? vm->resolve(c) : n_points / K;
  const double df_up = family(K + 1.0) - family(static_cast<double>(K));
  const double df_down = family(static_cast<double>(K)) - family(K - 1.0);

  LambdaBounds b;
  b.family = family;
  b.assumed_k = K;
  b.lower = v * c.rho * c.rho / df_up;
  b.upper = 2.0 * v * L * L / df_down;
  b.midpoint = 0.5 * (b.lower + b.upper);
  b.approx = v * L * L / df_down;
  b.degenerate = !(b.lower < b.upper);
  return b;
}

}  // namespace pkmeans
