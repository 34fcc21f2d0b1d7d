#include "flatfront/polynomial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace flatfront {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double falling_factorial(int j, int k) {
  double f = 1.0;
  for (int i = 0; i < k; ++i) f *= static_cast<double>(j - i);
  return f;
}

double factorial(int k) { return falling_factorial(k, k); }

}  // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == Complex{}) c_.pop_back();
}

Polynomial Polynomial::monomial(Complex c, int k) {
  std::vector<Complex> v(static_cast<std::size_t>(k) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots) {
  Polynomial p = constant(1.0);
  for (const Complex& r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex Polynomial::derivative_at(Complex z, int k) const {
  Complex acc{};
  for (int j = degree(); j >= k; --j) {
    acc = acc * z + c_[static_cast<std::size_t>(j)] * falling_factorial(j, k);
  }
  return acc;
}

double Polynomial::magnitude_at(double r, int k) const {
  double acc = 0.0;
  for (int j = degree(); j >= k; --j) {
    acc = acc * r + std::abs(c_[static_cast<std::size_t>(j)]) * falling_factorial(j, k);
  }
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Complex> d(c_.size() - 1);
  for (std::size_t j = 1; j < c_.size(); ++j) d[j - 1] = c_[j] * static_cast<double>(j);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::deflate(Complex r) const {
  if (c_.size() <= 1) return {};
  std::vector<Complex> q(c_.size() - 1);
  Complex acc = c_.back();
  for (std::size_t j = c_.size() - 1; j-- > 0;) {
    q[j] = acc;
    acc = acc * r + c_[j];
  }
  return Polynomial(std::move(q));
}

Polynomial Polynomial::trimmed(double rel) const {
  double big = 0.0;
  for (const Complex& c : c_) big = std::max(big, std::abs(c));
  std::vector<Complex> v = c_;
  while (!v.empty() && std::abs(v.back()) <= rel * big) v.pop_back();
  return Polynomial(std::move(v));
}

int Polynomial::zero_order() const {
  int k = 0;
  while (k < static_cast<int>(c_.size()) && c_[static_cast<std::size_t>(k)] == Complex{}) ++k;
  return k;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + Complex(-1.0) * b;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial operator*(Complex s, const Polynomial& p) {
  std::vector<Complex> v = p.c_;
  for (Complex& c : v) c *= s;
  return Polynomial(std::move(v));
}

namespace {

Complex newton_simple(const Polynomial& p, Complex z) {
  Complex best = z;
  double best_res = std::abs(p(z));
  for (int it = 0; it < 12 && best_res > 0.0; ++it) {
    const Complex d = p.derivative_at(z, 1);
    if (d == Complex{}) break;
    z -= p(z) / d;
    const double res = std::abs(p(z));
    if (!(res < best_res)) break;
    best = z;
    best_res = res;
  }
  return best;
}

// Newton on p^(m-1), whose root is simple at an m-fold root of p.
Complex newton_multiple(const Polynomial& p, Complex z, int m, double radius) {
  const Complex start = z;
  for (int it = 0; it < 30; ++it) {
    const Complex num = p.derivative_at(z, m - 1);
    const Complex den = p.derivative_at(z, m);
    if (den == Complex{}) break;
    const Complex step = num / den;
    z -= step;
    if (std::abs(z - start) > 10.0 * radius + 1e-12) return start;
    if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

// Taylor coefficients a_j = p^(j)(z)/j! must satisfy
// |a_j| <= |a_m| delta^(m-j) + rounding for every j < m.
bool is_multiple_root(const Polynomial& p, Complex z, int m, double delta) {
  const double r = std::abs(z);
  const double am = std::abs(p.derivative_at(z, m)) / factorial(m);
  for (int j = 0; j < m; ++j) {
    const double aj = std::abs(p.derivative_at(z, j)) / factorial(j);
    const double noise = 1e3 * kEps * p.magnitude_at(r, j) / factorial(j);
    if (aj > am * std::pow(delta, m - j) + noise) return false;
  }
  return true;
}

struct Grouper {
  const Polynomial& p;
  const std::vector<Complex>& eig;
  const RootOptions& opts;
  std::vector<Root> out;

  static constexpr std::array<double, 6> kRadii = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 0.0};

  void run(const std::vector<int>& idx, std::size_t level) {
    const double rad = level + 1 < kRadii.size() ? kRadii[level] : opts.cluster;
    // Single linkage at this radius (scaled by magnitude).
    std::vector<int> parent(idx.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        const Complex za = eig[idx[a]];
        const Complex zb = eig[idx[b]];
        const double scale = std::max({1.0, std::abs(za), std::abs(zb)});
        if (std::abs(za - zb) <= rad * scale) {
          parent[find(static_cast<int>(a))] = find(static_cast<int>(b));
        }
      }
    }
    std::vector<std::vector<int>> groups(idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      groups[find(static_cast<int>(a))].push_back(idx[a]);
    }
    for (const auto& g : groups) {
      if (g.empty()) continue;
      if (g.size() == 1) {
        out.push_back({newton_simple(p, eig[g[0]]), 1});
        continue;
      }
      const int m = static_cast<int>(g.size());
      Complex centroid{};
      double spread = 0.0;
      for (int i : g) centroid += eig[i];
      centroid /= static_cast<double>(m);
      for (int i : g) spread = std::max(spread, std::abs(eig[i] - centroid));
      const Complex z = newton_multiple(p, centroid, m, spread);
      if (is_multiple_root(p, z, m, opts.resolution)) {
        out.push_back({z, m});
      } else if (level + 1 < kRadii.size()) {
        run(g, level + 1);
      } else {
        for (int i : g) out.push_back({newton_simple(p, eig[i]), 1});
      }
    }
  }
};

}  // namespace

std::vector<Root> find_roots(const Polynomial& input, const RootOptions& opts) {
  const Polynomial p = input.trimmed(opts.trim);
  std::vector<Root> roots;
  if (p.degree() <= 0) return roots;

  // Exact zeros first: they are common (monomial factors) and exact.
  const int k0 = p.zero_order();
  if (k0 > 0) roots.push_back({Complex{}, k0});
  Polynomial q(std::vector<Complex>(p.coeffs().begin() + k0, p.coeffs().end()));
  const int n = q.degree();
  if (n >= 1) {
    std::vector<Complex> eig;
    if (n == 1) {
      eig.push_back(-q.coeffs()[0] / q.coeffs()[1]);
    } else {
      Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
      const Complex lead = q.leading();
      for (int j = 0; j < n; ++j) {
        companion(0, j) = -q.coeffs()[static_cast<std::size_t>(n - 1 - j)] / lead;
      }
      for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
      for (int i = 0; i < n; ++i) eig.push_back(solver.eigenvalues()(i));
    }
    std::vector<int> idx(eig.size());
    std::iota(idx.begin(), idx.end(), 0);
    Grouper grouper{q, eig, opts, {}};
    grouper.run(idx, 0);
    for (const Root& r : grouper.out) roots.push_back(r);
  }

  // Merge anything that polished onto the same point.
  std::vector<Root> merged;
  for (const Root& r : roots) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Root& m) {
      return std::abs(m.z - r.z) <= opts.cluster * std::max(1.0, std::abs(r.z));
    });
    if (it == merged.end()) {
      merged.push_back(r);
    } else {
      if (r.multiplicity > it->multiplicity) it->z = r.z;
      it->multiplicity += r.multiplicity;
    }
  }
  std::sort(merged.begin(), merged.end(), [](const Root& a, const Root& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return merged;
}

int root_order_at(const Polynomial& p, Complex z, const RootOptions& opts) {
  if (p.is_zero()) return std::numeric_limits<int>::max();
  int order = 0;
  for (const Root& r : find_roots(p, opts)) {
    if (std::abs(r.z - z) <= opts.cluster * std::max(1.0, std::abs(z)) + opts.resolution) {
      order += r.multiplicity;
    }
  }
  return order;
}

}  // namespace flatfront
