#pragma once

// Random inputs for property tests. Every generator takes the engine by
// reference so a test is reproducible from its seed.

#include <random>

#include "maxface/bjorling.hpp"

namespace maxface::testgen {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline LaurentPoly random_laurent(std::mt19937_64& rng, int lo, int hi, double scale = 1.0) {
  std::map<int, cplx> c;
  for (int k = lo; k <= hi; ++k) c[k] = {uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
  return LaurentPoly(c);
}

inline TrigPoly random_trig(std::mt19937_64& rng, int degree, double scale = 1.0) {
  std::map<int, double> a;
  std::map<int, double> b;
  for (int k = 1; k <= degree; ++k) {
    a[k] = uniform(rng, -scale, scale);
    b[k] = uniform(rng, -scale, scale);
  }
  return TrigPoly(uniform(rng, -scale, scale), a, b);
}

inline RealPoly random_poly(std::mt19937_64& rng, int degree, double scale = 1.0) {
  std::vector<double> c(degree + 1);
  for (auto& x : c) x = uniform(rng, -scale, scale);
  return RealPoly(c);
}

/// Null vector field u = (m² - n², 2mn, m² + n²).
inline Vec3Field null_field(const ParamFunction& m, const ParamFunction& n) {
  return {{m * m - n * n, 2.0 * (m * n), m * m + n * n}};
}

/// Valid circle data of degree ≤ 4: α' = a u, β = b u with deg m, n = 1 and
/// deg a, b ≤ 2. Any two multiples of one null vector are null and
/// orthogonal.
inline BjorlingData random_circle_data(std::mt19937_64& rng) {
  const Vec3Field u = null_field(random_trig(rng, 1), random_trig(rng, 1));
  const TrigPoly a = random_trig(rng, 1);
  const TrigPoly b = random_trig(rng, 2);
  return {UnitCircle{}, ParamFunction(a) * u, ParamFunction(b) * u};
}

/// Random point in (lo, hi) avoiding a neighbourhood of the ends.
inline double random_parameter(std::mt19937_64& rng, double lo, double hi) {
  const double pad = 1e-3 * (hi - lo);
  return uniform(rng, lo + pad, hi - pad);
}

}  // namespace maxface::testgen
