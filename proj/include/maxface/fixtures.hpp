#pragma once

// Named Björling data used by the CLI configs, tests and benchmarks.

#include <optional>
#include <string>
#include <vector>

#include "maxface/bjorling.hpp"
#include "maxface/sequences.hpp"

namespace maxface::fixtures {

struct Fixture {
  std::string name;
  BjorlingData data;
  Domain domain;
  double t0 = 0.0;
  std::optional<ScalingFamily> family;
  int n_min = 1;
  int n_max = 10;
};

/// (cos t, sin t, -1), the common null direction of the circle fixtures.
Vec3Field circle_null_direction();

/// α' = (cos t, sin t, 1), β = 0 on the unit circle.
Fixture circle_null_curve();
/// α' = cos t (cos t, sin t, -1), β = sin t (cos t, sin t, -1).
Fixture lorentzian_catenoid();
/// λ = (t, 0) on [-1, 1], α' = 0, β = (1 - t², 2t, 1 + t²).
Fixture shrinking_segment();
/// Catenoid with β = (sin t + cos(nt)/n)(cos t, sin t, -1).
Fixture perturbed_catenoid(int n);
/// Catenoid base with the circle scaling family.
Fixture catenoid_circle_deformation();

/// Every fixture above (perturbed catenoid at n = 4).
std::vector<Fixture> all();
/// Lookup by name; perturbed_catenoid takes `n`.
Fixture by_name(const std::string& name, int n = 4);

}  // namespace maxface::fixtures
