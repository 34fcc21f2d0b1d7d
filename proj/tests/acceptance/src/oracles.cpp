#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace flatfront::oracle {

M2 revolution_lift(double alpha, double c, C w) {
  const double k = 1.0 / (1.0 - alpha);
  M2 E;
  E(0, 0) = std::exp(-alpha * k * w) / c;
  E(0, 1) = c * alpha * k * std::exp(k * w);
  E(1, 0) = std::exp(-k * w) / c;
  E(1, 1) = c * k * std::exp(alpha * k * w);
  return E;
}

std::array<double, 3> first_form(C h, C t) {
  // omega + conj(theta) applied to d/dx and d/dy.
  const C ex = h + std::conj(t);
  const C ey = C(0, 1) * h + std::conj(C(0, 1) * t);
  return {std::norm(ex), std::real(ex * std::conj(ey)), std::norm(ey)};
}

std::vector<C> durand_kerner(const std::vector<C>& coeffs, std::vector<C> guess) {
  std::vector<C> a = coeffs;
  while (!a.empty() && a.back() == C{}) a.pop_back();
  const int n = static_cast<int>(a.size()) - 1;
  if (n < 1) return {};
  const C lead = a.back();
  auto p = [&](C z) {
    C s = 0.0;
    for (int k = n; k >= 0; --k) s = s * z + a[k];
    return s;
  };
  if (static_cast<int>(guess.size()) != n) {
    guess.resize(n);
    double bound = 0.0;
    for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(a[k] / lead));
    const double r = 1.0 + bound;
    for (int k = 0; k < n; ++k) guess[k] = std::polar(r, 2.0 * std::numbers::pi * (k + 0.25) / n);
  }
  std::vector<C> z = guess;
  for (int it = 0; it < 2000; ++it) {
    double move = 0.0;
    for (int i = 0; i < n; ++i) {
      C den = lead;
      for (int j = 0; j < n; ++j) {
        if (j != i) den *= z[i] - z[j];
      }
      const C step = p(z[i]) / den;
      z[i] -= step;
      move = std::max(move, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    if (move < 1e-15) break;
  }
  return z;
}

std::vector<int> preimage_cycles(const std::vector<C>& num, const std::vector<C>& den, C alpha,
                                 double radius, int steps) {
  const std::size_t n = std::max(num.size(), den.size());
  auto poly_at = [&](C beta) {
    std::vector<C> c(n, C{});
    for (std::size_t k = 0; k < num.size(); ++k) c[k] += num[k];
    for (std::size_t k = 0; k < den.size(); ++k) c[k] -= beta * den[k];
    return c;
  };
  const std::vector<C> start = durand_kerner(poly_at(alpha + radius));
  std::vector<C> cur = start;
  for (int s = 1; s <= steps; ++s) {
    const C beta = alpha + std::polar(radius, 2.0 * std::numbers::pi * s / steps);
    std::vector<C> next = durand_kerner(poly_at(beta), cur);
    // Keep labels by nearest-neighbour matching against the previous step.
    std::vector<C> ordered(cur.size());
    std::vector<char> used(next.size(), 0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      std::size_t best = 0;
      double bd = INFINITY;
      for (std::size_t j = 0; j < next.size(); ++j) {
        if (!used[j] && std::abs(next[j] - cur[i]) < bd) {
          bd = std::abs(next[j] - cur[i]);
          best = j;
        }
      }
      used[best] = 1;
      ordered[i] = next[best];
    }
    cur = ordered;
  }
  std::vector<int> perm(start.size());
  for (std::size_t i = 0; i < start.size(); ++i) {
    std::size_t best = 0;
    double bd = INFINITY;
    for (std::size_t j = 0; j < start.size(); ++j) {
      if (std::abs(cur[i] - start[j]) < bd) {
        bd = std::abs(cur[i] - start[j]);
        best = j;
      }
    }
    perm[i] = static_cast<int>(best);
  }
  std::vector<int> cycles;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      ++len;
    }
    cycles.push_back(len);
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

double voss3_ray_length(double a, double b, int panels) {
  const double u0 = std::log(a), u1 = std::log(b);
  const double h = (u1 - u0) / panels;
  auto f = [](double u) {
    const double r = std::exp(u);
    return std::sqrt(1.0 + r * r) / std::abs(r * r - 1.0) * r;
  };
  double s = f(u0) + f(u1);
  for (int k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(u0 + k * h);
  return s * h / 3.0;
}

M2 random_unimodular(std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 0.7);
  while (true) {
    M2 a;
    for (int i = 0; i < 4; ++i) a(i / 2, i % 2) = C(n(gen), n(gen));
    const C det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    if (std::abs(det) < 0.2) continue;
    return a / std::sqrt(det);
  }
}

std::array<double, 4> random_h3(std::mt19937_64& gen, double rmax) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, rmax);
  double x = n(gen), y = n(gen), z = n(gen);
  const double len = std::sqrt(x * x + y * y + z * z);
  const double r = u(gen);
  const double s = std::sinh(r) / len;
  return {std::cosh(r), s * x, s * y, s * z};
}

}  // namespace flatfront::oracle
