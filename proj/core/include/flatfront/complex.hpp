#pragma once

#include <complex>
#include <limits>
#include <string>

#include <Eigen/Core>

namespace flatfront {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

/// A point of the Riemann sphere C ∪ {∞}.
class SpherePoint {
 public:
  constexpr SpherePoint() = default;
  constexpr SpherePoint(Complex z) : z_(z) {}  // NOLINT(implicit)
  constexpr SpherePoint(double x) : z_(x, 0.0) {}  // NOLINT(implicit)

  static constexpr SpherePoint infinity() {
    SpherePoint p;
    p.infinite_ = true;
    return p;
  }

  constexpr bool is_infinite() const { return infinite_; }
  /// Finite value; meaningless when is_infinite().
  constexpr Complex value() const { return z_; }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.z_ == b.z_;
  }

 private:
  Complex z_{0.0, 0.0};
  bool infinite_ = false;
};

/// Parses "a+bi", "2", "-i", "1.5-0.5i" or "inf".
SpherePoint parse_sphere_point(const std::string& text);
std::string format_sphere_point(const SpherePoint& p);

}  // namespace flatfront
