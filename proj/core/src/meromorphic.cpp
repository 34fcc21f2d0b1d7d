#include "flatfront/meromorphic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "flatfront/error.hpp"

namespace flatfront {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kContainTol = 1e-9;

bool is_integral(double s) { return std::abs(s - std::round(s)) <= 1e-12; }

RootOptions root_options(const Tolerances& tol) {
  RootOptions o;
  o.cluster = tol.root;
  o.resolution = tol.vanish;
  return o;
}

Polynomial strip_low(const Polynomial& p, int k) {
  const auto& c = p.coeffs();
  return Polynomial(std::vector<Complex>(c.begin() + k, c.end()));
}

}  // namespace

bool Domain::contains(const SpherePoint& p, double tol) const {
  if (kind == Kind::kDisk) {
    return !p.is_infinite() && std::abs(p.value()) < radius;
  }
  return std::none_of(removed.begin(), removed.end(),
                      [&](const SpherePoint& q) { return chordal(p, q) <= tol; });
}

MeroFn::MeroFn(Polynomial num, Polynomial den, double power, Domain domain)
    : num_(std::move(num)), den_(std::move(den)), power_(power), domain_(std::move(domain)) {
  if (den_.is_zero()) throw Error(ErrorCode::kBadParams, "zero denominator");
  normalize();
}

MeroFn MeroFn::constant(Complex c, Domain d) {
  return MeroFn(Polynomial::constant(c), Polynomial::constant(1.0), 0.0, std::move(d));
}

MeroFn MeroFn::monomial(Complex c, double s, Domain d) {
  return MeroFn(Polynomial::constant(c), Polynomial::constant(1.0), s, std::move(d));
}

MeroFn MeroFn::identity(Domain d) {
  return MeroFn(Polynomial({0.0, 1.0}), Polynomial::constant(1.0), 0.0, std::move(d));
}

MeroFn MeroFn::with_domain(Domain d) const {
  MeroFn f = *this;
  f.domain_ = std::move(d);
  return f;
}

void MeroFn::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1.0);
    power_ = 0.0;
    return;
  }
  if (is_integral(power_)) {
    const int k = static_cast<int>(std::lround(power_));
    if (k > 0) num_ = num_ * Polynomial::monomial(1.0, k);
    if (k < 0) den_ = den_ * Polynomial::monomial(1.0, -k);
    power_ = 0.0;
  } else {
    // Move z factors into the power so the rational part is unit at 0.
    const int kn = num_.zero_order();
    const int kd = den_.zero_order();
    num_ = strip_low(num_, kn);
    den_ = strip_low(den_, kd);
    power_ += kn - kd;
  }
  // Cancel common roots.
  if (den_.degree() > 0 && num_.degree() > 0) {
    for (const Root& r : find_roots(den_)) {
      int k = std::min(r.multiplicity, root_order_at(num_, r.z));
      for (; k > 0; --k) {
        num_ = num_.deflate(r.z);
        den_ = den_.deflate(r.z);
      }
    }
  }
  const Complex lead = den_.leading();
  num_ = (1.0 / lead) * num_;
  den_ = (1.0 / lead) * den_;
}

bool MeroFn::is_constant() const {
  return num_.is_zero() || (num_.degree() == 0 && den_.degree() == 0 && power_ == 0.0);
}

bool MeroFn::is_monomial() const {
  return num_.degree() <= 0 && den_.degree() == 0;
}

int MeroFn::degree() const { return std::max(num_.degree(), den_.degree()); }

Complex MeroFn::value(Complex z) const {
  Complex v = num_(z) / den_(z);
  if (power_ != 0.0) v *= std::pow(z, power_);
  return v;
}

Complex MeroFn::value_log(Complex w) const {
  const Complex z = std::exp(w);
  Complex v = num_(z) / den_(z);
  if (power_ != 0.0) v *= std::exp(power_ * w);
  return v;
}

double MeroFn::abs_at(Complex z) const {
  const Complex d = den_(z);
  const Complex n = num_(z);
  if (d == Complex{}) return n == Complex{} ? 0.0 : kInf;
  double v = std::abs(n / d);
  if (power_ != 0.0) v *= std::pow(std::abs(z), power_);
  return v;
}

SpherePoint MeroFn::eval(Complex z) const {
  if (!domain_.contains(SpherePoint(z), 0.0)) {
    throw Error(ErrorCode::kOutsideDomain, "evaluation point outside the domain");
  }
  const Complex d = den_(z);
  if (d == Complex{} && !num_.is_zero()) return SpherePoint::infinity();
  if (power_ != 0.0 && z == Complex{}) {
    return power_ > 0.0 ? SpherePoint(Complex{}) : SpherePoint::infinity();
  }
  const Complex v = value(z);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return SpherePoint::infinity();
  return SpherePoint(v);
}

SpherePoint MeroFn::eval(const SpherePoint& p) const {
  if (!p.is_infinite()) return eval(p.value());
  if (!domain_.contains(p, 0.0)) {
    throw Error(ErrorCode::kOutsideDomain, "infinity is not in the domain");
  }
  if (num_.is_zero()) return SpherePoint(Complex{});
  const double excess = num_.degree() + power_ - den_.degree();
  if (excess > 0.0) return SpherePoint::infinity();
  if (excess < 0.0) return SpherePoint(Complex{});
  return SpherePoint(num_.leading() / den_.leading());
}

MeroFn MeroFn::derivative() const {
  const Polynomial w = num_.derivative() * den_ - num_ * den_.derivative();
  if (power_ == 0.0) return MeroFn(w, den_ * den_, 0.0, domain_);
  // (z^s R)' = z^(s-1) (s R + z R')
  const Polynomial top = Complex(power_) * num_ * den_ + Polynomial({0.0, 1.0}) * w;
  return MeroFn(top, den_ * den_, power_ - 1.0, domain_);
}

double MeroFn::order_at(const SpherePoint& p) const {
  if (num_.is_zero()) return kInf;
  if (p.is_infinite()) return den_.degree() - num_.degree() - power_;
  const Complex z = p.value();
  double ord = root_order_at(num_, z) - root_order_at(den_, z);
  if (z == Complex{}) ord += power_;
  return ord;
}

MeroFn operator*(const MeroFn& a, const MeroFn& b) {
  return MeroFn(a.num_ * b.num_, a.den_ * b.den_, a.power_ + b.power_, a.domain_);
}

MeroFn operator/(const MeroFn& a, const MeroFn& b) {
  if (b.is_zero()) throw Error(ErrorCode::kBadParams, "division by the zero function");
  return MeroFn(a.num_ * b.den_, a.den_ * b.num_, a.power_ - b.power_, a.domain_);
}

MeroFn operator+(const MeroFn& a, const MeroFn& b) {
  if (a.is_zero()) return b.with_domain(a.domain_);
  if (b.is_zero()) return a;
  if (a.power_ != b.power_) {
    throw Error(ErrorCode::kUnsupported, "sum of functions with different real powers");
  }
  return MeroFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, a.power_, a.domain_);
}

MeroFn operator*(Complex s, const MeroFn& f) {
  return MeroFn(s * f.num_, f.den_, f.power_, f.domain_);
}

double chordal(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinite() && b.is_infinite()) return 0.0;
  if (a.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinite()) return 1.0 / std::sqrt(1.0 + std::norm(a.value()));
  const Complex x = a.value();
  const Complex y = b.value();
  return std::abs(x - y) / (std::sqrt(1.0 + std::norm(x)) * std::sqrt(1.0 + std::norm(y)));
}

std::vector<AlphaPoint> alpha_points(const MeroFn& f, const SpherePoint& alpha,
                                     const Domain& region, const Tolerances& tol) {
  if (!f.is_rational()) {
    throw Error(ErrorCode::kUnsupported, "alpha-points need a rational function");
  }
  if (f.is_constant()) throw Error(ErrorCode::kConstantFunction, "function is constant");
  const Polynomial eq =
      alpha.is_infinite() ? f.den() : f.num() - alpha.value() * f.den();
  std::vector<AlphaPoint> out;
  int finite_total = 0;
  for (const Root& r : find_roots(eq, root_options(tol))) {
    finite_total += r.multiplicity;
    if (region.contains(SpherePoint(r.z), kContainTol)) {
      out.push_back({SpherePoint(r.z), r.multiplicity});
    }
  }
  const int at_infinity = f.degree() - finite_total;
  if (at_infinity > 0 && region.contains(SpherePoint::infinity(), kContainTol)) {
    out.push_back({SpherePoint::infinity(), at_infinity});
  }
  return out;
}

void validate(const RamificationProfile& p) {
  if (p.targets.size() != p.floors.size()) {
    throw Error(ErrorCode::kBadParams, "targets and floors differ in length");
  }
  for (int m : p.floors) {
    if (m < 1) throw Error(ErrorCode::kBadParams, "multiplicity floors must be >= 1");
  }
  for (std::size_t i = 0; i < p.targets.size(); ++i) {
    for (std::size_t j = i + 1; j < p.targets.size(); ++j) {
      if (chordal(p.targets[i], p.targets[j]) <= 0.0) {
        throw Error(ErrorCode::kBadParams, "ramification targets must be distinct");
      }
    }
  }
}

double gamma_sum(const RamificationProfile& p) {
  validate(p);
  double g = 0.0;
  for (int m : p.floors) g += (m == kInfiniteMultiplicity) ? 1.0 : 1.0 - 1.0 / m;
  return g;
}

std::vector<int> ramification_floor(const MeroFn& f, const std::vector<SpherePoint>& targets,
                                    const Domain& region, const Tolerances& tol) {
  if (f.is_constant()) throw Error(ErrorCode::kConstantFunction, "function is constant");
  std::vector<int> floors;
  floors.reserve(targets.size());
  if (!f.is_rational()) {
    // c z^s with s non-integral: locally injective away from 0 and infinity,
    // which it can only reach there.
    if (!f.is_monomial() || region.contains(SpherePoint(Complex{})) ||
        region.contains(SpherePoint::infinity())) {
      throw Error(ErrorCode::kUnsupported,
                  "real-power data need 0 and infinity removed from the region");
    }
    for (const SpherePoint& t : targets) {
      const bool omitted = t.is_infinite() || t.value() == Complex{};
      floors.push_back(omitted ? kInfiniteMultiplicity : 1);
    }
    return floors;
  }
  for (const SpherePoint& t : targets) {
    const auto pts = alpha_points(f, t, region, tol);
    int m = kInfiniteMultiplicity;
    for (const AlphaPoint& a : pts) m = std::min(m, a.multiplicity);
    floors.push_back(m);
  }
  return floors;
}

std::vector<SpherePoint> critical_values(const MeroFn& f, const Domain& region,
                                         const Tolerances& tol) {
  if (f.is_constant()) throw Error(ErrorCode::kConstantFunction, "function is constant");
  std::vector<SpherePoint> values;
  if (!f.is_rational()) return values;  // c z^s has no critical points off 0, infinity
  auto add = [&](const SpherePoint& v) {
    const bool seen = std::any_of(values.begin(), values.end(),
                                  [&](const SpherePoint& u) { return chordal(u, v) <= 1e-9; });
    if (!seen) values.push_back(v);
  };
  const Polynomial wronskian = f.num().derivative() * f.den() - f.num() * f.den().derivative();
  for (const Root& r : find_roots(wronskian, root_options(tol))) {
    if (!region.contains(SpherePoint(r.z), kContainTol)) continue;
    const double d = std::abs(f.den()(r.z));
    if (d <= 1e-10 * f.den().magnitude_at(std::abs(r.z), 0)) {
      add(SpherePoint::infinity());
    } else {
      add(SpherePoint(f.value(r.z)));
    }
  }
  if (region.contains(SpherePoint::infinity(), kContainTol)) {
    const SpherePoint v = f.eval(SpherePoint::infinity());
    for (const AlphaPoint& a : alpha_points(f, v, Domain::sphere(), tol)) {
      if (a.location.is_infinite() && a.multiplicity >= 2) add(v);
    }
  }
  return values;
}

namespace {

// Minimum of |g - alpha| on the circle |u - center| = radius.
template <class G>
double circle_min(const G& g, Complex center, double radius, Complex alpha) {
  constexpr int kSamples = 720;
  double m = kInf;
  for (int k = 0; k < kSamples; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / kSamples;
    m = std::min(m, std::abs(g(center + std::polar(radius, phi)) - alpha));
  }
  return m;
}

}  // namespace

double island_threshold(const MeroFn& f, Complex alpha, const Domain& region,
                        const Tolerances& tol) {
  const auto pts = alpha_points(f, SpherePoint(alpha), region, tol);
  if (pts.empty()) return kInf;

  // Everything an island disk must stay clear of: other alpha-points, poles,
  // and removed points (or the disk boundary).
  std::vector<SpherePoint> obstacles;
  for (const AlphaPoint& a : alpha_points(f, SpherePoint(alpha), Domain::sphere(), tol)) {
    obstacles.push_back(a.location);
  }
  for (const AlphaPoint& p : alpha_points(f, SpherePoint::infinity(), Domain::sphere(), tol)) {
    obstacles.push_back(p.location);
  }
  for (const SpherePoint& r : region.removed) obstacles.push_back(r);

  double threshold = kInf;
  for (const AlphaPoint& a : pts) {
    // Work in z near finite points, in w = 1/z near infinity.
    const bool at_inf = a.location.is_infinite();
    const Complex center = at_inf ? Complex{} : a.location.value();
    auto chart = [&](const SpherePoint& p) -> std::optional<Complex> {
      if (at_inf) {
        if (p.is_infinite()) return Complex{};
        if (p.value() == Complex{}) return std::nullopt;
        return 1.0 / p.value();
      }
      if (p.is_infinite()) return std::nullopt;
      return p.value();
    };
    double sep = kInf;
    for (const SpherePoint& o : obstacles) {
      const auto u = chart(o);
      if (!u) continue;
      const double d = std::abs(*u - center);
      if (d > 1e-9 * std::max(1.0, std::abs(center))) sep = std::min(sep, d);
    }
    if (region.kind == Domain::Kind::kDisk && !at_inf) {
      sep = std::min(sep, region.radius - std::abs(center));
    }
    const double delta = std::min(0.5 * sep, 1.0);
    const double m =
        at_inf ? circle_min([&](Complex w) { return f.value(1.0 / w); }, center, delta, alpha)
               : circle_min([&](Complex z) { return f.value(z); }, center, delta, alpha);
    threshold = std::min(threshold, 0.9 * m);
  }
  return threshold;
}

IslandReport islands(const MeroFn& f, Complex alpha, double epsilon, const Domain& region,
                     const Tolerances& tol) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::kBadParams, "epsilon must be positive");
  IslandReport rep;
  rep.alpha = alpha;
  rep.epsilon = epsilon;
  rep.threshold = island_threshold(f, alpha, region, tol);
  if (epsilon >= rep.threshold) {
    throw Error(ErrorCode::kEpsilonTooLarge,
                "epsilon " + std::to_string(epsilon) + " exceeds island separation threshold " +
                    std::to_string(rep.threshold));
  }
  for (const AlphaPoint& a : alpha_points(f, SpherePoint(alpha), region, tol)) {
    rep.islands.push_back({a.location, a.multiplicity});
    if (a.multiplicity == 1) ++rep.simple_count;
  }
  return rep;
}

}  // namespace flatfront
