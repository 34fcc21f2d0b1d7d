#pragma once

#include <vector>

#include "flatfront/complex.hpp"
#include "flatfront/config.hpp"

namespace flatfront {

/// Dense univariate polynomial with complex coefficients, lowest degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);

  static Polynomial constant(Complex c) { return Polynomial({c}); }
  /// c z^k
  static Polynomial monomial(Complex c, int k);
  /// prod (z - r_i)
  static Polynomial from_roots(const std::vector<Complex>& roots);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Complex>& coeffs() const { return c_; }
  Complex leading() const { return c_.empty() ? Complex{} : c_.back(); }

  Complex operator()(Complex z) const;
  /// k-th derivative at z.
  Complex derivative_at(Complex z, int k) const;
  /// sum_j |c_j| j!/(j-k)! r^(j-k): the size of the k-th derivative's terms.
  double magnitude_at(double r, int k) const;

  Polynomial derivative() const;
  /// Quotient of synthetic division by (z - r); the remainder is dropped.
  Polynomial deflate(Complex r) const;
  /// Drops leading coefficients below rel * max|c|.
  Polynomial trimmed(double rel) const;
  /// Number of exactly-zero low-order coefficients.
  int zero_order() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Complex s, const Polynomial& p);

 private:
  std::vector<Complex> c_;
};

struct Root {
  Complex z;
  int multiplicity = 1;
};

struct RootOptions {
  double cluster = Tolerances{}.root;
  /// Distance below which neighbouring roots count as one multiple root,
  /// enforced through the Taylor coefficients at the polished cluster center.
  double resolution = Tolerances{}.vanish;
  /// Leading coefficients below this fraction of the largest are dropped.
  double trim = 1e-13;
};

/// All roots with multiplicities (they sum to the trimmed degree).
/// Companion-matrix eigenvalues, multiplicity-aware clustering, Newton polish.
std::vector<Root> find_roots(const Polynomial& p, const RootOptions& opts = {});

/// Largest m such that z is an m-fold root within the given resolution.
int root_order_at(const Polynomial& p, Complex z, const RootOptions& opts = {});

}  // namespace flatfront
