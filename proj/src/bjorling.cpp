#include "maxface/bjorling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "maxface/errors.hpp"
#include "maxface/kernels.hpp"

namespace maxface {

namespace {
constexpr cplx kI{0.0, 1.0};
}

double lorentz_dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] - a[2] * b[2]; }

double max_abs(const Vec3& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

// ------------------------------------------------------------ SingularCurve

SingularCurve::SingularCurve(Segment s)
    : kind_(s), l1_(RealPoly({0.0, 1.0})), l2_(RealPoly{}) {
  if (!(s.a < s.b)) throw InvalidDataError("segment requires a < b");
}

SingularCurve::SingularCurve(UnitCircle c)
    : kind_(c), l1_(TrigPoly::cos(1)), l2_(TrigPoly::sin(1)) {}

SingularCurve::SingularCurve(GeneralAnalytic g) : kind_(g), l1_(g.lambda1), l2_(g.lambda2) {
  if (!(g.t_min < g.t_max)) throw InvalidDataError("curve interval requires t_min < t_max");
  if (!l1_.same_family(l2_)) throw UnsupportedError("curve components mix trig and polynomial");
}

std::string SingularCurve::name() const {
  if (is_segment()) return "segment";
  if (is_circle()) return "unit_circle";
  return "general";
}

cplx SingularCurve::point(double t) const { return {l1_(t), l2_(t)}; }

double SingularCurve::t_min() const {
  if (is_segment()) return segment().a;
  if (is_circle()) return 0.0;
  return std::get<GeneralAnalytic>(kind_).t_min;
}

double SingularCurve::t_max() const {
  if (is_segment()) return segment().b;
  if (is_circle()) return 2.0 * std::numbers::pi;
  return std::get<GeneralAnalytic>(kind_).t_max;
}

bool SingularCurve::periodic() const {
  if (is_circle()) return true;
  if (is_segment()) return false;
  return std::get<GeneralAnalytic>(kind_).periodic;
}

std::vector<double> SingularCurve::samples(int n) const {
  if (n < 2) throw std::invalid_argument("need at least two curve samples");
  std::vector<double> ts(n);
  const double lo = t_min();
  const double span = t_max() - lo;
  const int denom = periodic() ? n : n - 1;
  for (int i = 0; i < n; ++i) ts[i] = lo + span * i / denom;
  if (!periodic()) ts.back() = t_max();
  return ts;
}

// ---------------------------------------------------------------- Vec3Field

Vec3 Vec3Field::operator()(double t) const { return {c[0](t), c[1](t), c[2](t)}; }

Vec3Field Vec3Field::derivative() const {
  return {{c[0].derivative(), c[1].derivative(), c[2].derivative()}};
}

std::array<LaurentPoly, 3> Vec3Field::to_laurent() const {
  return {c[0].to_laurent(), c[1].to_laurent(), c[2].to_laurent()};
}

bool Vec3Field::is_identically_zero(double tol) const {
  return std::all_of(c.begin(), c.end(), [tol](const auto& f) { return f.is_identically_zero(tol); });
}

Vec3Field operator+(const Vec3Field& a, const Vec3Field& b) {
  return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]}};
}

Vec3Field operator-(const Vec3Field& a, const Vec3Field& b) {
  return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2]}};
}

Vec3Field operator*(const ParamFunction& s, const Vec3Field& v) {
  return {{s * v.c[0], s * v.c[1], s * v.c[2]}};
}

// --------------------------------------------------------------- validation

bool ValidationReport::passed() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const auto& c) { return !c.applicable || c.passed; });
}

const ConditionResult& ValidationReport::at(const std::string& name) const {
  for (const auto& c : conditions) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no validation condition named " + name);
}

namespace {

bool family_matches(const BjorlingData& data) {
  const bool want_trig = data.curve.is_circle() ||
                         (data.curve.is_general() && data.curve.lambda1().is_trig());
  auto ok = [&](const ParamFunction& f) {
    if (f.max_abs_coeff() == 0.0) return true;
    const bool constant =
        f.is_trig() ? f.trig().degree() == 0 : f.poly().degree() <= 0;
    return constant || f.is_trig() == want_trig;
  };
  for (int k = 0; k < 3; ++k) {
    if (!ok(data.alpha_prime.c[k]) || !ok(data.beta.c[k])) return false;
  }
  return true;
}

ParamFunction normalized(const ParamFunction& f, bool trig) {
  if (f.is_trig() == trig) return f;
  const double c = f(0.0);
  if (trig) return TrigPoly::constant(c);
  return RealPoly::constant(c);
}

}  // namespace

ValidationReport validate(const BjorlingData& data, int grid) {
  ValidationReport rep;
  const auto ts = data.curve.samples(grid);
  const auto dl1 = data.curve.lambda1().derivative();
  const auto dl2 = data.curve.lambda2().derivative();

  ConditionResult regular{"regular_curve", true, false, std::numeric_limits<double>::infinity(),
                          "min |lambda'(t)| > 1e-9"};
  ConditionResult family{"representation", true, family_matches(data), 0.0,
                         "component family matches the curve kind"};
  ConditionResult a_null{"alpha_null", true, false, 0.0, "<alpha', alpha'> = 0"};
  ConditionResult b_null{"beta_null", true, false, 0.0, "<beta, beta> = 0"};
  ConditionResult ortho{"alpha_beta_orthogonal", true, false, 0.0, "<alpha', beta> = 0"};
  ConditionResult nonvan{"nonvanishing", true, false, std::numeric_limits<double>::infinity(),
                         "alpha'(t) != 0 or beta(t) != 0"};

  for (double t : ts) {
    regular.measure = std::min(regular.measure, std::hypot(dl1(t), dl2(t)));
    const Vec3 a = data.alpha_prime(t);
    const Vec3 b = data.beta(t);
    a_null.measure = std::max(a_null.measure, std::abs(lorentz_dot(a, a)));
    b_null.measure = std::max(b_null.measure, std::abs(lorentz_dot(b, b)));
    ortho.measure = std::max(ortho.measure, std::abs(lorentz_dot(a, b)));
    nonvan.measure = std::min(nonvan.measure, std::max(max_abs(a), max_abs(b)));
  }
  regular.passed = regular.measure > kGridTol;
  a_null.passed = a_null.measure < kGridTol;
  b_null.passed = b_null.measure < kGridTol;
  ortho.passed = ortho.measure < kGridTol;
  nonvan.passed = nonvan.measure > kGridTol;
  rep.conditions = {regular, family, a_null, b_null, ortho, nonvan};

  ConditionResult ext{"analytic_extension", !data.curve.is_general(), false, 0.0,
                      "phi(lambda(t)) = alpha'(t) - i beta(t) extends analytically"};
  ConditionResult gauss{"gauss_map_not_unimodular", !data.curve.is_general(), false, 0.0,
                        "|g| is not identically 1"};
  ConditionResult fcurve{"f_nonzero_on_curve", !data.curve.is_general(), false, 0.0,
                         "f(lambda(t)) != 0"};
  if (data.curve.is_general()) {
    ext.detail = gauss.detail = fcurve.detail = "criteria-only curve: no extension constructed";
  } else if (!family.passed) {
    ext.detail = "component family does not match the curve";
  } else {
    const PhiForm phi = build_phi(data);
    for (double t : ts) {
      const cplx z = data.curve.point(t);
      const Vec3 a = data.alpha_prime(t);
      const Vec3 b = data.beta(t);
      for (int k = 0; k < 3; ++k) {
        ext.measure = std::max(ext.measure, std::abs(phi[k](z) - cplx(a[k], -b[k])));
      }
    }
    ext.passed = ext.measure < kIdentityTol;
    LaurentPoly f = phi[0] - kI * phi[1];
    if (f.is_zero()) {
      gauss.detail = fcurve.detail = "f = phi1 - i phi2 vanishes identically";
    } else {
      const auto w = weierstrass_from_phi(phi);
      // Off-curve probes: |g| ≡ 1 would make every point singular.
      double dev = 0.0;
      for (double t : ts) {
        const cplx z = data.curve.point(t);
        for (const cplx probe : {z * 0.9, z * 1.1, z + cplx(0.0, 0.25), z - cplx(0.0, 0.25)}) {
          if (probe == cplx{}) continue;
          const cplx gv = w.g(probe);
          if (std::isfinite(gv.real()) && std::isfinite(gv.imag())) {
            dev = std::max(dev, std::abs(std::abs(gv) - 1.0));
          }
        }
      }
      gauss.measure = dev;
      gauss.passed = dev > 1e-6;
      const auto sing = singular_set_on_curve(w, data.curve, grid);
      fcurve.measure = sing.min_abs_f;
      fcurve.passed = sing.min_abs_f > kGridTol;
    }
  }
  rep.conditions.push_back(ext);
  rep.conditions.push_back(gauss);
  rep.conditions.push_back(fcurve);
  return rep;
}

// ---------------------------------------------------------------------- phi

PhiForm build_phi(const BjorlingData& data) {
  if (data.curve.is_general()) {
    throw UnsupportedError("analytic extension is built only for segments and the unit circle");
  }
  if (!family_matches(data)) {
    throw InvalidDataError("components must be " +
                           std::string(data.curve.is_circle() ? "trigonometric" : "polynomial") +
                           " for a " + data.curve.name() + " curve");
  }
  const bool trig = data.curve.is_circle();
  PhiForm phi;
  for (int k = 0; k < 3; ++k) {
    phi[k] = normalized(data.alpha_prime.c[k], trig).to_laurent() -
             kI * normalized(data.beta.c[k], trig).to_laurent();
  }
  return phi;
}

LaurentPoly complex_lorentz_square(const PhiForm& phi) {
  return phi[0] * phi[0] + phi[1] * phi[1] - phi[2] * phi[2];
}

PeriodReport check_periods(const PhiForm& phi, const Domain& d) {
  PeriodReport rep;
  for (int k = 0; k < 3; ++k) rep.imag_residues[k] = phi[k].coeff(-1).imag();
  if (std::holds_alternative<Rectangle>(d)) {
    rep.simply_connected = true;
    rep.passed = true;
    return rep;
  }
  rep.passed = std::all_of(rep.imag_residues.begin(), rep.imag_residues.end(),
                           [](double v) { return std::abs(v) < kPeriodTol; });
  return rep;
}

// ----------------------------------------------------------------- solution

Vec3 MaxfaceSolution::operator()(cplx z) const {
  return {antiderivatives[0].real_increment(basepoint, z),
          antiderivatives[1].real_increment(basepoint, z),
          antiderivatives[2].real_increment(basepoint, z)};
}

MaxfaceSolution solve_phi(const PhiForm& phi, const Domain& d, cplx basepoint, bool allow_slit) {
  check_domain(d);
  if (!contains(d, basepoint, 1e-9)) throw DomainError("basepoint lies outside the domain");
  const bool has_poles = std::any_of(phi.begin(), phi.end(), [](const LaurentPoly& p) {
    return !p.is_zero() && p.min_exponent() < 0;
  });
  if (has_poles && min_modulus(d) == 0.0) {
    throw DomainError("phi has a pole at z = 0 inside the domain");
  }
  MaxfaceSolution sol{{antiderivative(phi[0]), antiderivative(phi[1]), antiderivative(phi[2])},
                      basepoint,
                      d,
                      true};
  const auto periods = check_periods(phi, d);
  if (!periods.passed) {
    if (!allow_slit) {
      std::ostringstream os;
      os << "period condition fails: Im c_{-1} = (" << periods.imag_residues[0] << ", "
         << periods.imag_residues[1] << ", " << periods.imag_residues[2] << ")";
      throw PeriodError(os.str());
    }
    sol.single_valued = false;
  }
  return sol;
}

MaxfaceSolution solve(const BjorlingData& data, const Domain& d, double t0) {
  const auto rep = validate(data);
  if (!rep.passed()) {
    std::string failed;
    for (const auto& c : rep.conditions) {
      if (c.applicable && !c.passed) failed += (failed.empty() ? "" : ", ") + c.name;
    }
    throw InvalidDataError("Björling data fails: " + failed);
  }
  return solve_phi(build_phi(data), d, data.curve.point(t0));
}

Vec3 eval_immersion(const MaxfaceSolution& sol, cplx z) {
  if (!contains(sol.domain, z, 1e-9)) throw DomainError("point outside the solution domain");
  if (z == cplx{}) {
    const bool pole = std::any_of(sol.antiderivatives.begin(), sol.antiderivatives.end(),
                                  [](const Antiderivative& a) {
                                    return a.log_coeff != cplx{} ||
                                           (!a.poly_part.is_zero() && a.poly_part.min_exponent() < 0);
                                  });
    if (pole) throw DomainError("X is singular at z = 0");
  }
  return sol(z);
}

// -------------------------------------------------------------- weierstrass

cplx GaussMap::operator()(cplx z) const {
  if (!den) return num(z);
  return num(z) / (*den)(z);
}

cplx GaussMap::derivative(cplx z) const {
  if (!den) return num.derivative()(z);
  const cplx d = (*den)(z);
  return (num.derivative()(z) * d - num(z) * den->derivative()(z)) / (d * d);
}

WeierstrassData weierstrass_from_phi(const PhiForm& phi) {
  WeierstrassData w;
  w.f = phi[0] - kI * phi[1];
  if (w.f.is_zero()) throw DomainError("f = phi1 - i phi2 vanishes identically");
  const LaurentPoly num = -phi[2];
  if (auto q = divide_exact(num, w.f)) {
    w.g = GaussMap{*q, std::nullopt};
  } else {
    w.g = GaussMap{num, w.f};
  }
  return w;
}

PhiForm phi_from_weierstrass(const WeierstrassData& w) {
  const LaurentPoly one = LaurentPoly::constant(1.0);
  if (w.g.is_laurent()) {
    const LaurentPoly g2 = w.g.num * w.g.num;
    return {0.5 * (one + g2) * w.f, (0.5 * kI) * (one - g2) * w.f, -(w.g.num * w.f)};
  }
  const LaurentPoly& n = w.g.num;
  const LaurentPoly& d = *w.g.den;
  const LaurentPoly n2 = n * n;
  const LaurentPoly d2 = d * d;
  auto exact = [](const LaurentPoly& a, const LaurentPoly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw UnsupportedError("ratio Gauss map does not give a Laurent polynomial phi");
    return *q;
  };
  return {exact(0.5 * (d2 + n2) * w.f, d2), exact((0.5 * kI) * (d2 - n2) * w.f, d2),
          exact(-(n * w.f), d)};
}

SingularSetReport singular_set_on_curve(const WeierstrassData& w, const SingularCurve& curve,
                                        int samples) {
  SingularSetReport rep;
  rep.min_abs_f = std::numeric_limits<double>::infinity();
  for (double t : curve.samples(samples)) {
    const cplx z = curve.point(t);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(std::abs(w.g(z)) - 1.0));
    rep.min_abs_f = std::min(rep.min_abs_f, std::abs(w.f(z)));
  }
  rep.passed = rep.max_deviation < kIdentityTol;
  return rep;
}

WeierstrassCheck check_weierstrass(const WeierstrassData& w, const Domain& d, int samples) {
  WeierstrassCheck rep;
  rep.min_metric_factor = std::numeric_limits<double>::infinity();
  for (const cplx z : grid_points(d, samples, samples)) {
    if (z == cplx{}) continue;
    const cplx gv = w.g(z);
    if (!std::isfinite(gv.real()) || !std::isfinite(gv.imag())) continue;
    const double a = std::abs(gv);
    rep.max_unimodular_deviation = std::max(rep.max_unimodular_deviation, std::abs(a - 1.0));
    const double fa = std::abs(w.f(z));
    rep.min_metric_factor = std::min(rep.min_metric_factor, (1 + a * a) * (1 + a * a) * fa * fa);
  }
  rep.gauss_not_unimodular = rep.max_unimodular_deviation > 1e-6;
  rep.metric_positive = rep.min_metric_factor > 1e-12;
  return rep;
}

}  // namespace maxface
