#pragma once

#include <string>

namespace flatfront {

/// Numerical tolerances shared across modules. Every field can be overridden
/// from a key=value config file (see load_tolerances).
struct Tolerances {
  double herm = 1e-9;        // Hermitian symmetry
  double det = 1e-9;         // |det - 1| for H^3 points and isometries
  double root = 1e-7;        // root clustering radius
  double vanish = 1e-5;      // scaled derivative-vanishing threshold
  double lift = 1e-9;        // |det E - 1| along integrated lifts
  double sing = 1e-6;        // | |rho| - 1 | singular flag
  double rtol = 1e-10;       // integrator relative tolerance
  double atol = 1e-12;       // integrator absolute tolerance
  double cauchy = 1e-6;      // completeness Cauchy increment
  double loop_closure = 1e-6;
};

/// Parses "key = value" lines; '#' starts a comment. Unknown keys or
/// malformed values raise Error(kParseError).
Tolerances parse_tolerances(const std::string& text, Tolerances base = {});
Tolerances load_tolerances(const std::string& path, Tolerances base = {});

/// Worker count: FLATFRONT_THREADS if set and positive, else hardware
/// concurrency (at least 1).
unsigned worker_threads();

}  // namespace flatfront
