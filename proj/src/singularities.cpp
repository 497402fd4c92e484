#include "maxface/singularities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxface/errors.hpp"
#include "maxface/kernels.hpp"

namespace maxface {

std::string to_string(Branch b) {
  switch (b) {
    case Branch::None: return "none";
    case Branch::Alpha: return "alpha";
    case Branch::Beta: return "beta";
    case Branch::Both: return "both";
  }
  return "none";
}

std::string to_string(SingularityKind k) {
  switch (k) {
    case SingularityKind::Swallowtail: return "swallowtail";
    case SingularityKind::ShrinkingComponent: return "shrinking_component";
    case SingularityKind::FrontNonSwallowtail: return "front_non_swallowtail";
    case SingularityKind::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

CriteriaFunctions::CriteriaFunctions(const BjorlingData& data)
    : dl1_(data.curve.lambda1().derivative()),
      dl2_(data.curve.lambda2().derivative()),
      a1_(data.alpha_prime.c[0]),
      a2_(data.alpha_prime.c[1]),
      a3_(data.alpha_prime.c[2]),
      da1_(a1_.derivative()),
      da2_(a2_.derivative()),
      b1_(data.beta.c[0]),
      b2_(data.beta.c[1]),
      b3_(data.beta.c[2]),
      db1_(b1_.derivative()),
      db2_(b2_.derivative()),
      s_(a3_ * dl1_ + b3_ * dl2_),
      ds_(s_.derivative()) {}

double CriteriaFunctions::d_alpha(double t) const { return a1_(t) * da2_(t) - a2_(t) * da1_(t); }

double CriteriaFunctions::d_beta(double t) const { return b1_(t) * db2_(t) - b2_(t) * db1_(t); }

cplx CriteriaFunctions::case_formula(double t, Branch which) const {
  const double l1 = dl1_(t);
  const double l2 = dl2_(t);
  const double a3 = a3_(t);
  const double b3 = b3_(t);
  double d = 0.0;
  double x = 0.0;
  if (which == Branch::Alpha) {
    d = d_alpha(t);
    x = a3;
  } else if (which == Branch::Beta) {
    d = d_beta(t);
    x = b3;
  } else {
    throw std::invalid_argument("case formula needs the alpha or beta branch");
  }
  if (x == 0.0) throw DomainError("case formula branch does not apply at this parameter");
  const double scale = d / ((l1 * l1 + l2 * l2) * (a3 * a3 + b3 * b3) * x * x);
  return scale * cplx(-b3 * l1 + a3 * l2, a3 * l1 + b3 * l2);
}

cplx null_direction(const BjorlingData& data, double t) {
  const double a3 = data.alpha_prime.c[2](t);
  const double b3 = data.beta.c[2](t);
  if (a3 == 0.0 && b3 == 0.0) {
    throw DomainError("null direction is undefined where alpha3' and beta3 both vanish");
  }
  return {-b3, a3};
}

cplx a_function(const BjorlingData& data, const WeierstrassData& w, double t) {
  const cplx z = data.curve.point(t);
  if (w.g.den && std::abs((*w.g.den)(z)) == 0.0) throw DomainError("Gauss map has a pole here");
  const cplx g = w.g(z);
  const cplx f = w.f(z);
  if (std::abs(g) == 0.0 || std::abs(f) == 0.0) throw DomainError("A undefined where g or f vanishes");
  return w.g.derivative(z) / (g * g * f);
}

HValues h_and_h_prime(const BjorlingData& data, double t) {
  const CriteriaFunctions fns(data);
  return {fns.s(t), fns.s_prime(t)};
}

namespace {

// Branch gate: a coordinate counts as nonzero above this.
constexpr double kBranchGate = 1e-8;

Branch branch_at(double a3, double b3) {
  const bool a = std::abs(a3) > kBranchGate;
  const bool b = std::abs(b3) > kBranchGate;
  if (a && b) return Branch::Both;
  if (a) return Branch::Alpha;
  if (b) return Branch::Beta;
  return Branch::None;
}

// The applicable normalized D values all clear tol.nonzero.
bool d_conditions_hold(const Diagnostics& dg, double a3, double b3, double tol) {
  bool ok = dg.branch != Branch::None;
  if (dg.branch == Branch::Alpha || dg.branch == Branch::Both) {
    ok = ok && std::abs(dg.D_alpha / (a3 * a3)) > tol;
  }
  if (dg.branch == Branch::Beta || dg.branch == Branch::Both) {
    ok = ok && std::abs(dg.D_beta / (b3 * b3)) > tol;
  }
  return ok;
}

}  // namespace

ClassifiedPoint classify_point(const CriteriaFunctions& fns, const BjorlingData& data,
                               const WeierstrassData* w, double t, const Tolerances& tol) {
  ClassifiedPoint out;
  Diagnostics& dg = out.diagnostics;
  dg.t = t;
  dg.s = fns.s(t);
  dg.H = dg.s;
  dg.H_prime = fns.s_prime(t);
  dg.D_alpha = fns.d_alpha(t);
  dg.D_beta = fns.d_beta(t);
  const double a3 = fns.alpha3(t);
  const double b3 = fns.beta3(t);
  dg.branch = branch_at(a3, b3);
  if (dg.branch == Branch::Alpha || dg.branch == Branch::Both) {
    dg.case_alpha = fns.case_formula(t, Branch::Alpha);
  }
  if (dg.branch == Branch::Beta || dg.branch == Branch::Both) {
    dg.case_beta = fns.case_formula(t, Branch::Beta);
  }

  std::optional<cplx> a;
  if (w != nullptr) {
    try {
      a = a_function(data, *w, t);
      dg.a_from_weierstrass = true;
    } catch (const DomainError&) {
      a.reset();
    }
  }
  if (!a) {
    if (dg.case_alpha) a = kCaseFormulaSign * *dg.case_alpha;
    else if (dg.case_beta) a = kCaseFormulaSign * *dg.case_beta;
  }
  if (!a) {
    out.kind = SingularityKind::Indeterminate;
    return out;
  }
  dg.re_A = a->real();
  dg.im_A = a->imag();

  if (std::abs(dg.re_A) <= tol.nonzero || !d_conditions_hold(dg, a3, b3, tol.nonzero)) {
    out.kind = SingularityKind::Indeterminate;
  } else if (std::abs(dg.s) < tol.root && std::abs(dg.H_prime) > tol.nonzero) {
    out.kind = SingularityKind::Swallowtail;
  } else {
    out.kind = SingularityKind::FrontNonSwallowtail;
  }
  return out;
}

ClassifiedPoint classify_point(const BjorlingData& data, const WeierstrassData* w, double t,
                               const Tolerances& tol) {
  return classify_point(CriteriaFunctions(data), data, w, t, tol);
}

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Bracketed root of s on [lo, hi] with s(lo), s(hi) of opposite signs.
double refine_bracket(const CriteriaFunctions& fns, double lo, double hi, double root_tol) {
  double slo = fns.s(lo);
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double sm = fns.s(mid);
    if (std::abs(sm) < root_tol * 1e-3 || sm == 0.0) return mid;
    if (sign_of(sm) == sign_of(slo)) {
      lo = mid;
      slo = sm;
    } else {
      hi = mid;
    }
  }
  return std::abs(fns.s(lo)) <= std::abs(fns.s(hi)) ? lo : hi;
}

// Minimizer of |s| on [lo, hi] by golden-section search.
double golden_min_abs(const CriteriaFunctions& fns, double lo, double hi) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - r * (hi - lo);
  double d = lo + r * (hi - lo);
  double fc = std::abs(fns.s(c));
  double fd = std::abs(fns.s(d));
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - r * (hi - lo);
      fc = std::abs(fns.s(c));
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + r * (hi - lo);
      fd = std::abs(fns.s(d));
    }
  }
  return fc < fd ? c : d;
}

struct RawRoot {
  double t;
  bool sign_change;
};

}  // namespace

SingularPointReport find_swallowtails(const BjorlingData& data, const WeierstrassData* w,
                                      int resolution, const Tolerances& tol) {
  if (resolution < kMinResolution) {
    throw std::invalid_argument("find_swallowtails needs resolution >= " +
                                std::to_string(kMinResolution));
  }
  SingularPointReport rep;
  const CriteriaFunctions fns(data);
  if (fns.s_function().is_identically_zero()) {
    rep.s_identically_zero = true;
    return rep;
  }

  const double lo = data.curve.t_min();
  const double hi = data.curve.t_max();
  const bool periodic = data.curve.periodic();
  const int n = resolution;
  // Parameters t_0..t_n; for periodic curves t_n is t_0 shifted by a period.
  std::vector<double> ts(n + 1);
  for (int j = 0; j <= n; ++j) ts[j] = lo + (hi - lo) * j / n;
  ts[n] = hi;
  std::vector<double> sv(n + 1);
  kernels::grid_map_parallel(std::span<const double>(ts), std::span<double>(sv),
                             [&](double t) { return fns.s(t); });

  auto at = [&](int j) {
    if (periodic) {
      j = ((j % n) + n) % n;
    } else {
      j = std::clamp(j, 0, n);
    }
    return sv[j];
  };

  std::vector<RawRoot> raw;
  const int last = periodic ? n - 1 : n;
  for (int j = 0; j <= last; ++j) {
    const double s0 = sv[j];
    if (std::abs(s0) < tol.root) {
      const bool interior = periodic || (j > 0 && j < n);
      const bool change = interior ? sign_of(at(j - 1)) * sign_of(at(j + 1)) < 0 : true;
      raw.push_back({ts[j], change});
      continue;
    }
    if (j < n) {
      const double s1 = sv[j + 1];
      if (std::abs(s1) >= tol.root && sign_of(s0) * sign_of(s1) < 0) {
        raw.push_back({refine_bracket(fns, ts[j], ts[j + 1], tol.root), true});
        continue;
      }
    }
    // |s| dip without a sign change on either side.
    const bool has_left = periodic || j > 0;
    const bool has_right = periodic || j < n;
    if (has_left && has_right) {
      const double sl = at(j - 1);
      const double sr = at(j + 1);
      if (std::abs(s0) < std::abs(sl) && std::abs(s0) <= std::abs(sr) &&
          sign_of(sl) == sign_of(s0) && sign_of(sr) == sign_of(s0)) {
        const double step = (hi - lo) / n;
        const double tm = golden_min_abs(fns, ts[j] - step, ts[j] + step);
        if (std::abs(fns.s(tm)) < tol.root) raw.push_back({tm, false});
      }
    }
  }

  // Normalize into the parameter interval and drop duplicates.
  const double period = hi - lo;
  for (auto& r : raw) {
    if (periodic) {
      r.t = lo + std::fmod(std::fmod(r.t - lo, period) + period, period);
      if (period - (r.t - lo) < 1e-12) r.t = lo;
    }
  }
  std::sort(raw.begin(), raw.end(), [](const RawRoot& a, const RawRoot& b) { return a.t < b.t; });
  std::vector<RawRoot> roots;
  for (const auto& r : raw) {
    if (!roots.empty() && r.t - roots.back().t <= 1e-6) {
      roots.back().sign_change = roots.back().sign_change || r.sign_change;
      continue;
    }
    roots.push_back(r);
  }
  if (periodic && roots.size() > 1 && roots.front().t + period - roots.back().t <= 1e-6) {
    roots.front().sign_change = roots.front().sign_change || roots.back().sign_change;
    roots.pop_back();
  }

  for (const auto& r : roots) {
    auto cp = classify_point(fns, data, w, r.t, tol);
    SingularPointReport::Entry e{r.t, cp.diagnostics, cp.kind, r.sign_change};
    if (!r.sign_change) e.kind = SingularityKind::Indeterminate;
    if (e.kind == SingularityKind::Swallowtail) rep.swallowtail_parameters.push_back(r.t);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

ShrinkingReport check_shrinking(const BjorlingData& data, int grid, const Tolerances& tol) {
  ShrinkingReport rep;
  const CriteriaFunctions fns(data);
  rep.s_max_coeff = fns.s_function().max_abs_coeff();
  rep.s_vanishes = rep.s_max_coeff < 1e-12;
  if (data.curve.is_segment()) {
    rep.segment_alpha_constant = data.alpha_prime.is_identically_zero(1e-12);
  }
  rep.min_normalized_d = std::numeric_limits<double>::infinity();
  for (double t : data.curve.samples(grid)) {
    const double a3 = fns.alpha3(t);
    const double b3 = fns.beta3(t);
    const Branch b = branch_at(a3, b3);
    double worst = std::numeric_limits<double>::infinity();
    if (b == Branch::Alpha || b == Branch::Both) {
      worst = std::min(worst, std::abs(fns.d_alpha(t) / (a3 * a3)));
    }
    if (b == Branch::Beta || b == Branch::Both) {
      worst = std::min(worst, std::abs(fns.d_beta(t) / (b3 * b3)));
    }
    if (b == Branch::None) worst = 0.0;
    rep.min_normalized_d = std::min(rep.min_normalized_d, worst);
    if (!(worst > tol.nonzero)) ++rep.failing_samples;
  }
  rep.d_nonzero = rep.failing_samples == 0;
  rep.shrinking = rep.s_vanishes && rep.d_nonzero && rep.segment_alpha_constant;
  return rep;
}

ConeLikeReport check_generalized_conelike(const BjorlingData& data, const MaxfaceSolution& sol,
                                          double t0, double tol, int samples) {
  ConeLikeReport rep;
  rep.shrinking = check_shrinking(data).shrinking;
  rep.image_point = eval_immersion(sol, data.curve.point(t0));
  for (double t : data.curve.samples(samples)) {
    const Vec3 x = eval_immersion(sol, data.curve.point(t));
    for (int k = 0; k < 3; ++k) {
      rep.max_deviation = std::max(rep.max_deviation, std::abs(x[k] - rep.image_point[k]));
    }
  }
  // Every curve kind here has a compact trace: the circle, or a closed interval.
  rep.conelike = rep.shrinking && rep.max_deviation < tol;
  return rep;
}

}  // namespace maxface
