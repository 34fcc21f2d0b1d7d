#pragma once

#include <limits>
#include <vector>

#include "flatfront/complex.hpp"
#include "flatfront/config.hpp"
#include "flatfront/polynomial.hpp"

namespace flatfront {

/// Where a meromorphic function lives: the Riemann sphere minus finitely many
/// points, or the disk |z| < radius.
struct Domain {
  enum class Kind { kPuncturedSphere, kDisk };

  Kind kind = Kind::kPuncturedSphere;
  std::vector<SpherePoint> removed;
  double radius = std::numeric_limits<double>::infinity();

  static Domain sphere() { return {}; }
  /// C = sphere minus infinity.
  static Domain plane() { return {Kind::kPuncturedSphere, {SpherePoint::infinity()}, {}}; }
  static Domain sphere_minus(std::vector<SpherePoint> pts) {
    return {Kind::kPuncturedSphere, std::move(pts), std::numeric_limits<double>::infinity()};
  }
  static Domain disk(double r) { return {Kind::kDisk, {}, r}; }

  bool contains(const SpherePoint& p, double tol = 1e-12) const;
};

/// Rational function times an optional real power z^s. Stored reduced: no
/// common numerator/denominator roots, monic denominator, and integral
/// powers folded into the polynomials.
class MeroFn {
 public:
  MeroFn() = default;  // the zero function on the sphere
  MeroFn(Polynomial num, Polynomial den, double power = 0.0, Domain domain = {});

  static MeroFn constant(Complex c, Domain d = {});
  /// c z^s
  static MeroFn monomial(Complex c, double s, Domain d = {});
  /// The coordinate function z.
  static MeroFn identity(Domain d = {});

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  double power() const { return power_; }
  const Domain& domain() const { return domain_; }
  MeroFn with_domain(Domain d) const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const;
  bool is_rational() const { return power_ == 0.0; }
  /// c z^s with constant c (possibly s = 0).
  bool is_monomial() const;
  /// max(deg num, deg den) for rational functions.
  int degree() const;

  /// Checked evaluation; Error(kOutsideDomain) outside the domain. Poles give
  /// infinity. The real power uses the principal branch.
  SpherePoint eval(Complex z) const;
  SpherePoint eval(const SpherePoint& p) const;
  /// Unchecked finite-valued evaluation (inf/nan at poles).
  Complex value(Complex z) const;
  /// Value at z = e^w with z^s taken as e^(s w); single-valued in w.
  Complex value_log(Complex w) const;
  /// |f(z)|; branch independent.
  double abs_at(Complex z) const;

  MeroFn derivative() const;
  /// Leading Laurent exponent at p (real when a power factor is present);
  /// +infinity for the zero function.
  double order_at(const SpherePoint& p) const;

  friend MeroFn operator*(const MeroFn& a, const MeroFn& b);
  friend MeroFn operator/(const MeroFn& a, const MeroFn& b);
  friend MeroFn operator+(const MeroFn& a, const MeroFn& b);
  friend MeroFn operator*(Complex s, const MeroFn& f);

 private:
  void normalize();

  Polynomial num_;
  Polynomial den_ = Polynomial::constant(1.0);
  double power_ = 0.0;
  Domain domain_;
};

/// Half the chordal distance between the stereographic preimages.
double chordal(const SpherePoint& a, const SpherePoint& b);

struct AlphaPoint {
  SpherePoint location;
  int multiplicity = 1;
};

/// Solutions of f = alpha inside region, with multiplicity (poles for
/// alpha = infinity). Requires a rational, nonconstant f.
std::vector<AlphaPoint> alpha_points(const MeroFn& f, const SpherePoint& alpha,
                                     const Domain& region, const Tolerances& tol = {});
inline std::vector<AlphaPoint> alpha_points(const MeroFn& f, const SpherePoint& alpha) {
  return alpha_points(f, alpha, f.domain());
}

/// Sentinel for "no alpha-point" (an omitted value), i.e. m = infinity.
inline constexpr int kInfiniteMultiplicity = std::numeric_limits<int>::max();

struct RamificationProfile {
  std::vector<SpherePoint> targets;
  std::vector<int> floors;  // kInfiniteMultiplicity allowed
};

/// Throws Error(kBadParams) on size mismatch, non-positive floors or
/// coincident targets.
void validate(const RamificationProfile& p);

/// sum_j (1 - 1/m_j), with 1 - 1/infinity = 1.
double gamma_sum(const RamificationProfile& p);

/// Minimum multiplicity of the alpha_j-points of f in region, per target
/// (kInfiniteMultiplicity when alpha_j is omitted).
std::vector<int> ramification_floor(const MeroFn& f, const std::vector<SpherePoint>& targets,
                                    const Domain& region, const Tolerances& tol = {});

/// Values taken with multiplicity >= 2 somewhere in region.
std::vector<SpherePoint> critical_values(const MeroFn& f, const Domain& region,
                                         const Tolerances& tol = {});

struct Island {
  SpherePoint center;  // the alpha-point the island shrinks to
  int multiplicity = 1;
};

struct IslandReport {
  Complex alpha;
  double epsilon = 0.0;
  /// Islands are certified for epsilon below this value.
  double threshold = 0.0;
  std::vector<Island> islands;
  int simple_count = 0;
};

/// Largest epsilon for which each alpha-point of f in region is enclosed by
/// its own simply connected preimage component of D(alpha, epsilon).
double island_threshold(const MeroFn& f, Complex alpha, const Domain& region,
                        const Tolerances& tol = {});

/// Islands of f over D(alpha, epsilon): one per alpha-point, of the same
/// multiplicity. Error(kEpsilonTooLarge) when epsilon >= island_threshold.
/// This is the small-disk picture; large disks whose preimage components
/// merge are not analysed.
IslandReport islands(const MeroFn& f, Complex alpha, double epsilon, const Domain& region,
                     const Tolerances& tol = {});

}  // namespace flatfront
