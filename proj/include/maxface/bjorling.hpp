#pragma once

// Singular Björling data on a curve λ, its analytic extension φ, the maxface
// X(z) = Re ∫_{λ(t0)}^{z} φ(w) dw, and conversion to and from Weierstrass
// data (g, f).

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "maxface/laurent.hpp"

namespace maxface {

using Vec3 = std::array<double, 3>;

/// Lorentz–Minkowski product x1 y1 + x2 y2 - x3 y3.
double lorentz_dot(const Vec3& a, const Vec3& b);
double max_abs(const Vec3& v);

// ------------------------------------------------------------ singular curve

/// λ(t) = (t, 0) on [a, b].
struct Segment {
  double a = 0.0;
  double b = 1.0;
};

/// λ(t) = e^{it} on [0, 2π).
struct UnitCircle {};

/// λ = (λ1, λ2) given componentwise. Criteria can be evaluated; the analytic
/// extension of φ is not constructed for these.
struct GeneralAnalytic {
  ParamFunction lambda1;
  ParamFunction lambda2;
  double t_min = 0.0;
  double t_max = 1.0;
  bool periodic = false;
};

class SingularCurve {
 public:
  SingularCurve(Segment s);          // NOLINT(implicit)
  SingularCurve(UnitCircle c);       // NOLINT(implicit)
  SingularCurve(GeneralAnalytic g);  // NOLINT(implicit)

  bool is_segment() const { return std::holds_alternative<Segment>(kind_); }
  bool is_circle() const { return std::holds_alternative<UnitCircle>(kind_); }
  bool is_general() const { return std::holds_alternative<GeneralAnalytic>(kind_); }
  const Segment& segment() const { return std::get<Segment>(kind_); }
  std::string name() const;

  cplx point(double t) const;
  const ParamFunction& lambda1() const { return l1_; }
  const ParamFunction& lambda2() const { return l2_; }

  double t_min() const;
  double t_max() const;
  /// Parameter interval wraps (the last sample must not repeat the first).
  bool periodic() const;

  /// n parameters covering the interval (half-open when periodic).
  std::vector<double> samples(int n) const;

 private:
  std::variant<Segment, UnitCircle, GeneralAnalytic> kind_;
  ParamFunction l1_;
  ParamFunction l2_;
};

// -------------------------------------------------------------------- data

struct Vec3Field {
  std::array<ParamFunction, 3> c;

  Vec3 operator()(double t) const;
  Vec3Field derivative() const;
  std::array<LaurentPoly, 3> to_laurent() const;
  bool is_identically_zero(double tol = 1e-12) const;
};

Vec3Field operator+(const Vec3Field& a, const Vec3Field& b);
Vec3Field operator-(const Vec3Field& a, const Vec3Field& b);
Vec3Field operator*(const ParamFunction& s, const Vec3Field& v);

struct BjorlingData {
  SingularCurve curve;
  Vec3Field alpha_prime;
  Vec3Field beta;
};

struct ConditionResult {
  std::string name;
  bool applicable = true;
  bool passed = false;
  /// Max violation over the grid (or the margin for "nonvanishing").
  double measure = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ConditionResult> conditions;
  bool passed() const;
  const ConditionResult& at(const std::string& name) const;
};

inline constexpr int kValidationGrid = 1024;
inline constexpr double kGridTol = 1e-9;
inline constexpr double kIdentityTol = 1e-10;

/// Checks the defining conditions of singular Björling data on a grid.
ValidationReport validate(const BjorlingData& data, int grid = kValidationGrid);

// -------------------------------------------------------------------- phi

using PhiForm = std::array<LaurentPoly, 3>;

/// Analytic extension of α'(t) - iβ(t). Throws UnsupportedError for general
/// curves and InvalidDataError when components do not match the curve kind.
PhiForm build_phi(const BjorlingData& data);

/// φ1² + φ2² - φ3² as a Laurent polynomial (identically zero for null φ).
LaurentPoly complex_lorentz_square(const PhiForm& phi);

struct PeriodReport {
  /// Im c_{-1} of each component; Re ∮ φ_k = -2π Im c_{-1}.
  std::array<double, 3> imag_residues{};
  bool passed = true;
  bool simply_connected = false;
};

inline constexpr double kPeriodTol = 1e-12;

PeriodReport check_periods(const PhiForm& phi, const Domain& d);

// --------------------------------------------------------------- solution

struct MaxfaceSolution {
  std::array<Antiderivative, 3> antiderivatives;
  cplx basepoint;
  Domain domain;
  /// false when a period does not close; X is then the branch along the
  /// radial-then-arc path from the basepoint (slit opposite the basepoint).
  bool single_valued = true;

  Vec3 operator()(cplx z) const;
};

/// Validates, checks periods and integrates. Throws InvalidDataError or
/// PeriodError.
MaxfaceSolution solve(const BjorlingData& data, const Domain& d, double t0);

/// Integrates φ from `basepoint`. With `allow_slit` a failing period yields a
/// slit solution instead of a PeriodError.
MaxfaceSolution solve_phi(const PhiForm& phi, const Domain& d, cplx basepoint,
                          bool allow_slit = false);

/// Throws DomainError outside the closed domain, and at z = 0 when φ has a pole there.
Vec3 eval_immersion(const MaxfaceSolution& sol, cplx z);

// ------------------------------------------------------------- weierstrass

/// Gauss map, either a Laurent polynomial or a ratio num/den.
struct GaussMap {
  LaurentPoly num;
  std::optional<LaurentPoly> den;

  bool is_laurent() const { return !den.has_value(); }
  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
};

struct WeierstrassData {
  GaussMap g;
  LaurentPoly f;
};

/// g = -φ3/(φ1 - iφ2), f = φ1 - iφ2. Throws DomainError when f ≡ 0.
WeierstrassData weierstrass_from_phi(const PhiForm& phi);

/// Φ = ((1+g²)/2, (i/2)(1-g²), -g) f. A ratio g is accepted when every
/// component divides out exactly; otherwise UnsupportedError.
PhiForm phi_from_weierstrass(const WeierstrassData& w);

struct SingularSetReport {
  double max_deviation = 0.0;  ///< max ||g(λ(t))| - 1|
  double min_abs_f = 0.0;      ///< min |f(λ(t))|
  bool passed = false;
};

SingularSetReport singular_set_on_curve(const WeierstrassData& w, const SingularCurve& curve,
                                        int samples = kValidationGrid);

struct WeierstrassCheck {
  double max_unimodular_deviation = 0.0;  ///< max ||g|-1| over the grid
  double min_metric_factor = 0.0;         ///< min (1+|g|²)²|f|² over the grid
  bool gauss_not_unimodular = false;
  bool metric_positive = false;
};

/// Sampled checks that |g| is not identically 1 on the domain and that the
/// lift metric (1+|g|²)²|f|² stays positive.
WeierstrassCheck check_weierstrass(const WeierstrassData& w, const Domain& d, int samples = 64);

}  // namespace maxface
