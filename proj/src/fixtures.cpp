#include "maxface/fixtures.hpp"

#include <stdexcept>

namespace maxface::fixtures {

namespace {

const TrigPoly kCos = TrigPoly::cos(1);
const TrigPoly kSin = TrigPoly::sin(1);

}  // namespace

Vec3Field circle_null_direction() {
  return {{kCos, kSin, TrigPoly::constant(-1.0)}};
}

Fixture circle_null_curve() {
  const TrigPoly zero;
  BjorlingData data{UnitCircle{}, {{kCos, kSin, TrigPoly::constant(1.0)}}, {{zero, zero, zero}}};
  return {"circle_null_curve", data, Annulus{0.5, 2.0}, 0.0, std::nullopt, 1, 10};
}

Fixture lorentzian_catenoid() {
  const Vec3Field v = circle_null_direction();
  BjorlingData data{UnitCircle{}, ParamFunction(kCos) * v, ParamFunction(kSin) * v};
  return {"lorentzian_catenoid", data, Annulus{0.5, 2.0}, 0.0, std::nullopt, 1, 10};
}

Fixture shrinking_segment() {
  const RealPoly zero;
  BjorlingData data{Segment{-1.0, 1.0},
                    {{zero, zero, zero}},
                    {{RealPoly({1.0, 0.0, -1.0}), RealPoly({0.0, 2.0}), RealPoly({1.0, 0.0, 1.0})}}};
  return {"shrinking_segment", data, Rectangle{-1.0, 1.0, -0.5, 0.5}, 0.0,
          ScalingFamily(SegmentFamily{2.0}), 1, 6};
}

Fixture perturbed_catenoid(int n) {
  if (n < 1) throw std::out_of_range("perturbed catenoid needs n >= 1");
  const Vec3Field v = circle_null_direction();
  const TrigPoly b = kSin + TrigPoly::cos(n, 1.0 / n);
  BjorlingData data{UnitCircle{}, ParamFunction(kCos) * v, ParamFunction(b) * v};
  return {"perturbed_catenoid", data, Annulus{0.5, 2.0}, 0.0, std::nullopt, n, n};
}

Fixture catenoid_circle_deformation() {
  Fixture f = lorentzian_catenoid();
  f.name = "catenoid_circle_deformation";
  f.family = ScalingFamily(CircleFamily{});
  return f;
}

std::vector<Fixture> all() {
  return {circle_null_curve(), lorentzian_catenoid(), shrinking_segment(), perturbed_catenoid(4),
          catenoid_circle_deformation()};
}

Fixture by_name(const std::string& name, int n) {
  if (name == "circle_null_curve") return circle_null_curve();
  if (name == "lorentzian_catenoid") return lorentzian_catenoid();
  if (name == "shrinking_segment") return shrinking_segment();
  if (name == "perturbed_catenoid") return perturbed_catenoid(n);
  if (name == "catenoid_circle_deformation") return catenoid_circle_deformation();
  throw std::out_of_range("unknown fixture " + name);
}

}  // namespace maxface::fixtures
