#include "maxface/sequences.hpp"

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

ScalingMember segment_family(double r, int n) {
  if (n < 1) throw std::out_of_range("scaling family index starts at 1");
  if (!(r > 0.0)) throw std::invalid_argument("segment family needs r > 0");
  RealPoly p = RealPoly::constant(1.0 / (std::pow(r + 1.0, n) * n));
  ScalingMember m;
  m.n = n;
  for (int i = 1; i <= n; ++i) {
    p = p * RealPoly::linear_factor(1.0 / i);
    m.zeros.push_back(1.0 / i);
  }
  m.f = p;
  m.a_n = n - 1;
  return m;
}

ScalingMember circle_family(int n) {
  if (n < 1) throw std::out_of_range("scaling family index starts at 1");
  ScalingMember m;
  m.n = n;
  m.f = TrigPoly::cos(n, 1.0 / (std::ldexp(1.0, n + 2) * n));
  for (int k = 0; k < 2 * n; ++k) m.zeros.push_back((2 * k + 1) * std::numbers::pi / (2 * n));
  m.a_n = 2 * n - 1;
  return m;
}

ScalingFamily::ScalingFamily(SegmentFamily s) : kind_(s) {
  if (!(s.r > 0.0)) throw std::invalid_argument("segment family needs r > 0");
}
ScalingFamily::ScalingFamily(CircleFamily c) : kind_(c) {}
ScalingFamily::ScalingFamily(CustomFamily c) : kind_(std::move(c)) {}

std::string ScalingFamily::name() const {
  if (std::holds_alternative<SegmentFamily>(kind_)) return "segment";
  if (std::holds_alternative<CircleFamily>(kind_)) return "circle";
  return "custom";
}

ScalingMember ScalingFamily::member(int n) const {
  if (const auto* s = std::get_if<SegmentFamily>(&kind_)) return segment_family(s->r, n);
  if (std::holds_alternative<CircleFamily>(kind_)) return circle_family(n);
  const auto& members = std::get<CustomFamily>(kind_).members;
  const auto it = members.find(n);
  if (it == members.end()) throw std::out_of_range("custom family has no member " + std::to_string(n));
  ScalingMember m = it->second;
  m.n = n;
  m.a_n = static_cast<int>(m.zeros.size()) - 1;
  return m;
}

// ----------------------------------------------------------------- axioms

bool ScalingAxiomReport::passed() const {
  return std::all_of(items.begin(), items.end(),
                     [](const auto& c) { return !c.applicable || c.passed; });
}

bool ScalingRangeReport::passed() const {
  return norms_decreasing && std::all_of(per_n.begin(), per_n.end(),
                                         [](const auto& r) { return r.passed(); });
}

namespace {

PhiForm scaled_phi(const ParamFunction& f, const PhiForm& phi) {
  const LaurentPoly fl = f.to_laurent();
  return {fl * phi[0], fl * phi[1], fl * phi[2]};
}

}  // namespace

ScalingAxiomReport verify_scaling_axioms(const ScalingFamily& fam, const BjorlingData& data,
                                         const Domain& d, int n, int samples) {
  ScalingAxiomReport rep;
  rep.n = n;
  const ScalingMember m = fam.member(n);
  const auto& curve = data.curve;

  ConditionResult inj{"zeros_injective", true, true, std::numeric_limits<double>::infinity(),
                      "zeros lie in the parameter interval and lambda is injective on them"};
  for (std::size_t i = 0; i < m.zeros.size(); ++i) {
    const double t = m.zeros[i];
    if (t < curve.t_min() - 1e-12 || t > curve.t_max() + 1e-12) inj.passed = false;
    for (std::size_t j = 0; j < i; ++j) {
      inj.measure = std::min(inj.measure, std::abs(curve.point(t) - curve.point(m.zeros[j])));
    }
  }
  if (m.zeros.size() < 2) inj.measure = 0.0;
  inj.passed = inj.passed && (m.zeros.size() < 2 || inj.measure > 1e-9);

  ConditionResult simple{"zeros_simple", true, !m.zeros.empty(), 0.0,
                         "f_n(t_k) = 0 and f_n'(t_k) != 0"};
  const ParamFunction df = m.f.derivative();
  double min_slope = std::numeric_limits<double>::infinity();
  for (double t : m.zeros) {
    simple.measure = std::max(simple.measure, std::abs(m.f(t)));
    min_slope = std::min(min_slope, std::abs(df(t)));
  }
  simple.passed = simple.passed && simple.measure < 1e-12 && min_slope > 1e-8;
  if (m.zeros.empty()) simple.detail = "no zeros";

  ConditionResult count{"zero_count", true, static_cast<int>(m.zeros.size()) >= n,
                        static_cast<double>(m.zeros.size()), "at least n zeros"};

  ConditionResult ext{"g_extension", !curve.is_general(), false, 0.0,
                      "g_n = f_n (alpha' - i beta) extends analytically"};
  ConditionResult period{"g_period", !curve.is_general(), false, 0.0, "Re of the loop integral of g_n vanishes"};
  if (curve.is_general()) {
    ext.detail = period.detail = "criteria-only curve: no extension constructed";
  } else {
    const PhiForm phi = build_phi(data);
    const PhiForm g = scaled_phi(m.f, phi);
    for (double t : curve.samples(kValidationGrid)) {
      const cplx z = curve.point(t);
      const Vec3 a = data.alpha_prime(t);
      const Vec3 b = data.beta(t);
      const double ft = m.f(t);
      for (int k = 0; k < 3; ++k) {
        ext.measure = std::max(ext.measure, std::abs(g[k](z) - ft * cplx(a[k], -b[k])));
      }
    }
    ext.passed = ext.measure < kIdentityTol;
    const auto pr = check_periods(g, d);
    period.passed = pr.passed;
    period.measure = std::max({std::abs(pr.imag_residues[0]), std::abs(pr.imag_residues[1]),
                               std::abs(pr.imag_residues[2])});
    rep.g_norm = sup_norm(std::span<const LaurentPoly>(g.data(), 3), d, samples);
    // The deformed ψ_n differs from φ by i g_n.
    PhiForm psi;
    for (int k = 0; k < 3; ++k) psi[k] = phi[k] + kI * g[k];
    rep.deformed_period_closed = check_periods(psi, d).passed;
  }
  rep.items = {inj, simple, count, ext, period};
  return rep;
}

ScalingRangeReport verify_scaling_range(const ScalingFamily& fam, const BjorlingData& data,
                                        const Domain& d, int n_min, int n_max, int samples) {
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("n range must satisfy 1 <= n_min <= n_max");
  ScalingRangeReport rep;
  for (int n = n_min; n <= n_max; ++n) {
    rep.per_n.push_back(verify_scaling_axioms(fam, data, d, n, samples));
  }
  rep.norms_decreasing = true;
  for (std::size_t i = 1; i < rep.per_n.size(); ++i) {
    if (!(rep.per_n[i].g_norm.coefficient_bound < rep.per_n[i - 1].g_norm.coefficient_bound)) {
      rep.norms_decreasing = false;
    }
  }
  return rep;
}

// ------------------------------------------------------------- deformation

DeformedData deform(const BjorlingData& data, const ScalingMember& member, bool segment_variant) {
  if (!check_shrinking(data).shrinking) {
    throw InvalidDataError("base data is not shrinking; deformation needs a cone-like base");
  }
  DeformedData dd{member.n, member, data, std::nullopt, std::nullopt, {}};
  dd.data.alpha_prime = data.alpha_prime + member.f * data.beta;
  if (!segment_variant) dd.data.beta = data.beta - member.f * data.alpha_prime;
  if (!data.curve.is_general()) {
    dd.g = scaled_phi(member.f, build_phi(data));
    dd.psi = build_phi(dd.data);
  }
  dd.validation = validate(dd.data);
  return dd;
}

DeformedData deform(const BjorlingData& data, const ScalingFamily& fam, int n) {
  return deform(data, fam.member(n), fam.is_segment());
}

Census swallowtail_census(const DeformedData& dd, const WeierstrassData* w, int resolution,
                          const Tolerances& tol) {
  Census c;
  c.report = find_swallowtails(dd.data, w, resolution, tol);
  c.count = static_cast<int>(c.report.swallowtail_parameters.size());
  c.expected = dd.member.a_n + 1;
  c.shortfall = c.count < c.expected;
  return c;
}

// ------------------------------------------------------------- convergence

double path_length(const Domain& d, cplx basepoint, cplx z) {
  if (std::holds_alternative<Rectangle>(d)) return std::abs(z - basepoint);
  const double rz = std::abs(z);
  return std::abs(rz - std::abs(basepoint)) + rz * std::abs(std::arg(z / basepoint));
}

double path_bound(const Domain& d, cplx basepoint, int n_u, int n_v) {
  const auto pts = grid_points(d, n_u, n_v);
  return kernels::grid_max_parallel(pts, [&](cplx z) { return path_length(d, basepoint, z); });
}

namespace {

double point_difference(const MaxfaceSolution& a, const MaxfaceSolution& b, cplx z) {
  const Vec3 xa = a(z);
  const Vec3 xb = b(z);
  return std::max({std::abs(xa[0] - xb[0]), std::abs(xa[1] - xb[1]), std::abs(xa[2] - xb[2])});
}

}  // namespace

double sup_difference_serial(const MaxfaceSolution& a, const MaxfaceSolution& b,
                             const std::vector<cplx>& pts) {
  return kernels::grid_max_serial(pts, [&](cplx z) { return point_difference(a, b, z); });
}

double sup_difference_parallel(const MaxfaceSolution& a, const MaxfaceSolution& b,
                               const std::vector<cplx>& pts) {
  return kernels::grid_max_parallel(pts, [&](cplx z) { return point_difference(a, b, z); });
}

ConvergenceReport convergence_report(const MaxfaceSolution& base_sol, const ScalingFamily& fam,
                                     const BjorlingData& data, const Domain& d,
                                     const ConvergenceOptions& opt) {
  const auto axioms = verify_scaling_range(fam, data, d, opt.n_min, opt.n_max);
  if (!axioms.passed()) {
    std::ostringstream os;
    os << "scaling axioms fail:";
    for (const auto& r : axioms.per_n) {
      for (const auto& c : r.items) {
        if (c.applicable && !c.passed) os << " n=" << r.n << ":" << c.name;
      }
    }
    if (!axioms.norms_decreasing) os << " norms_not_decreasing";
    throw InvalidDataError(os.str());
  }

  ConvergenceReport rep;
  rep.L = path_bound(d, base_sol.basepoint, opt.n_u, opt.n_v);
  const auto pts = grid_points(d, opt.n_u, opt.n_v);
  for (const auto& ax : axioms.per_n) {
    const DeformedData dd = deform(data, fam, ax.n);
    if (!dd.validation.passed()) {
      throw InvalidDataError("deformed data fails validation at n = " + std::to_string(ax.n));
    }
    ConvergenceRow row;
    row.n = ax.n;
    row.a_n = dd.member.a_n;
    const auto sol_n = solve_phi(*dd.psi, d, base_sol.basepoint, true);
    row.period_closed = sol_n.single_valued;
    const auto w = weierstrass_from_phi(*dd.psi);
    const auto census = swallowtail_census(dd, &w, opt.census_resolution, opt.tol);
    row.swallowtail_count = census.count;
    row.expected_count = census.expected;
    row.shortfall = census.shortfall;
    row.g_n_norm = ax.g_norm;
    row.path_bound_L = rep.L;
    row.certified_bound = rep.L * ax.g_norm.coefficient_bound;
    row.measured_sup_diff = sup_difference_parallel(base_sol, sol_n, pts);
    if (fam.is_segment()) {
      const auto da = (dd.data.alpha_prime - data.alpha_prime).to_laurent();
      const auto db = (dd.data.beta - data.beta).to_laurent();
      const double na_all = std::max({coefficient_bound(da[0], d), coefficient_bound(da[1], d),
                                      coefficient_bound(da[2], d)});
      const double nb_all = std::max({coefficient_bound(db[0], d), coefficient_bound(db[1], d),
                                      coefficient_bound(db[2], d)});
      row.segment_bound = rep.L * (na_all + nb_all);
    }
    rep.rows.push_back(row);
  }

  rep.within_bounds = std::all_of(rep.rows.begin(), rep.rows.end(), [](const auto& r) {
    return r.measured_sup_diff <= r.certified_bound + 1e-8 &&
           (!r.segment_bound || r.measured_sup_diff <= *r.segment_bound + 1e-8);
  });
  rep.bounds_decreasing = rep.measured_decreasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (!(rep.rows[i].certified_bound < rep.rows[i - 1].certified_bound)) rep.bounds_decreasing = false;
    if (!(rep.rows[i].measured_sup_diff < rep.rows[i - 1].measured_sup_diff)) {
      rep.measured_decreasing = false;
    }
  }
  return rep;
}

}  // namespace maxface
