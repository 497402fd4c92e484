#pragma once

// Finite Laurent polynomials, real trigonometric and real polynomials, and
// sup-norms over annuli and rectangles.

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace maxface {

using cplx = std::complex<double>;

/// Coefficients with modulus below this are dropped after every operation.
inline constexpr double kZeroThreshold = 1e-14;

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::map<int, cplx> coefficients);

  static LaurentPoly constant(cplx c);
  static LaurentPoly monomial(int exponent, cplx c = 1.0);

  const std::map<int, cplx>& coefficients() const { return coeffs_; }
  cplx coeff(int exponent) const;
  bool is_zero() const { return coeffs_.empty(); }
  int min_exponent() const;
  int max_exponent() const;

  /// Sum of c_k z^k. Throws DomainError at z = 0 when negative powers exist.
  cplx operator()(cplx z) const;

  LaurentPoly derivative() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(cplx s);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) { return a *= -1.0; }
  friend LaurentPoly operator*(LaurentPoly a, cplx s) { return a *= s; }
  friend LaurentPoly operator*(cplx s, LaurentPoly a) { return a *= s; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  /// Coefficient-level sup distance max_k |a_k - b_k|.
  friend double coefficient_distance(const LaurentPoly& a, const LaurentPoly& b);

  /// Σ|c_k|, used for relative tolerances.
  double l1_norm() const;

  std::string to_string() const;

 private:
  void prune();
  std::map<int, cplx> coeffs_;
};

/// Result of termwise integration. The z^-1 term cannot be integrated into a
/// Laurent polynomial and is carried as `log_coeff`.
struct Antiderivative {
  LaurentPoly poly_part;
  cplx log_coeff{0.0, 0.0};

  /// Re ∫_{z0}^{z} p along the radial-then-arc path from z0.
  ///
  /// When Im(log_coeff) = 0 this is path independent and equals
  /// Re[P(z) - P(z0)] + Re(c) ln(|z|/|z0|). Otherwise the angular term uses
  /// arg(z/z0) in (-pi, pi], i.e. the branch slit along the ray opposite z0.
  double real_increment(cplx z0, cplx z) const;

  /// The complex increment P(z) - P(z0) + c (ln|z/z0| + i arg(z/z0)).
  cplx increment(cplx z0, cplx z) const;
};

cplx eval(const LaurentPoly& p, cplx z);
LaurentPoly differentiate(const LaurentPoly& p);
Antiderivative antiderivative(const LaurentPoly& p);

/// Exact division in the Laurent ring. Returns nullopt when `den` does not
/// divide `num` (remainder above `rel_tol` relative to |num|_1).
std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den,
                                        double rel_tol = 1e-10);

// ---------------------------------------------------------------------------

/// a0 + Σ a_k cos kt + Σ b_k sin kt.
class TrigPoly {
 public:
  TrigPoly() = default;
  TrigPoly(double const_term, std::map<int, double> cos_coeffs, std::map<int, double> sin_coeffs);

  static TrigPoly constant(double c);
  static TrigPoly cos(int k, double a = 1.0);
  static TrigPoly sin(int k, double b = 1.0);

  double const_term() const { return const_; }
  const std::map<int, double>& cos_coeffs() const { return cos_; }
  const std::map<int, double>& sin_coeffs() const { return sin_; }
  int degree() const;

  double operator()(double t) const;
  TrigPoly derivative() const;

  /// max |coefficient|; identically zero iff this is below a tolerance.
  double max_abs_coeff() const;

  /// Real trig polynomial recovered from a Laurent polynomial in z = e^{it}.
  /// Imaginary parts (which a real function cannot have) are discarded.
  static TrigPoly from_laurent(const LaurentPoly& p);

  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(double s);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator-(TrigPoly a) { return a *= -1.0; }
  friend TrigPoly operator*(TrigPoly a, double s) { return a *= s; }
  friend TrigPoly operator*(double s, TrigPoly a) { return a *= s; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

 private:
  void prune();
  double const_ = 0.0;
  std::map<int, double> cos_;
  std::map<int, double> sin_;
};

/// cos kt -> (z^k + z^-k)/2, sin kt -> (z^k - z^-k)/(2i).
LaurentPoly trig_to_laurent(const TrigPoly& q);

/// Real polynomial, coefficients by ascending degree.
class RealPoly {
 public:
  RealPoly() = default;
  explicit RealPoly(std::vector<double> coefficients);
  static RealPoly constant(double c) { return RealPoly({c}); }
  /// The monic linear factor t - root.
  static RealPoly linear_factor(double root) { return RealPoly({-root, 1.0}); }

  const std::vector<double>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  double operator()(double t) const;
  cplx operator()(cplx z) const;
  RealPoly derivative() const;
  double max_abs_coeff() const;

  RealPoly& operator+=(const RealPoly& o);
  RealPoly& operator-=(const RealPoly& o);
  RealPoly& operator*=(double s);
  friend RealPoly operator+(RealPoly a, const RealPoly& b) { return a += b; }
  friend RealPoly operator-(RealPoly a, const RealPoly& b) { return a -= b; }
  friend RealPoly operator-(RealPoly a) { return a *= -1.0; }
  friend RealPoly operator*(RealPoly a, double s) { return a *= s; }
  friend RealPoly operator*(double s, RealPoly a) { return a *= s; }
  friend RealPoly operator*(const RealPoly& a, const RealPoly& b);

 private:
  void trim();
  std::vector<double> c_;
};

/// Substitute t -> z.
LaurentPoly poly_to_laurent(const RealPoly& p);

/// A real function of the curve parameter: trig polynomial (periodic curves)
/// or polynomial (segments). Arithmetic between the two families throws.
class ParamFunction {
 public:
  ParamFunction() : rep_(RealPoly{}) {}
  ParamFunction(TrigPoly q) : rep_(std::move(q)) {}   // NOLINT(implicit)
  ParamFunction(RealPoly p) : rep_(std::move(p)) {}   // NOLINT(implicit)

  bool is_trig() const { return std::holds_alternative<TrigPoly>(rep_); }
  bool is_poly() const { return std::holds_alternative<RealPoly>(rep_); }
  const TrigPoly& trig() const { return std::get<TrigPoly>(rep_); }
  const RealPoly& poly() const { return std::get<RealPoly>(rep_); }

  double operator()(double t) const;
  ParamFunction derivative() const;
  double max_abs_coeff() const;
  bool is_identically_zero(double tol = 1e-12) const { return max_abs_coeff() < tol; }

  /// Analytic extension: trig_to_laurent or t -> z substitution.
  LaurentPoly to_laurent() const;

  /// Zero of the other family is adopted by this one, so a zero polynomial
  /// mixes freely with trig data.
  bool same_family(const ParamFunction& o) const;

  friend ParamFunction operator+(const ParamFunction& a, const ParamFunction& b);
  friend ParamFunction operator-(const ParamFunction& a, const ParamFunction& b);
  friend ParamFunction operator*(const ParamFunction& a, const ParamFunction& b);
  friend ParamFunction operator*(double s, const ParamFunction& a);
  friend ParamFunction operator-(const ParamFunction& a) { return -1.0 * a; }

 private:
  std::variant<TrigPoly, RealPoly> rep_;
};

// ---------------------------------------------------------------------------

struct Annulus {
  double r_in = 0.5;
  double r_out = 2.0;
};

struct Rectangle {
  double u_min = 0.0, u_max = 1.0;
  double v_min = -0.5, v_max = 0.5;
};

using Domain = std::variant<Annulus, Rectangle>;

/// Throws std::invalid_argument for empty or inverted domains.
void check_domain(const Domain& d);

/// Closed-domain membership with absolute slack.
bool contains(const Domain& d, cplx z, double slack = 1e-12);

/// Tensor grid on the closed domain, row-major in the first index.
/// Annulus: radii r_in..r_out inclusive (n_u of them) by n_v angles 2πj/n_v.
/// Rectangle: u and v both inclusive.
std::vector<cplx> grid_points(const Domain& d, int n_u, int n_v);

/// Largest and smallest |z| over the closed domain.
double max_modulus(const Domain& d);
double min_modulus(const Domain& d);

std::string describe(const Domain& d);

struct SupNorm {
  double grid_estimate = 0.0;
  /// Σ|c_k| max_{z∈Ω}|z|^k: a rigorous upper bound for the sup.
  double coefficient_bound = 0.0;
};

/// Minimum `samples` for sup_norm.
inline constexpr int kMinSupSamples = 64;

double coefficient_bound(const LaurentPoly& p, const Domain& d);

SupNorm sup_norm(const LaurentPoly& p, const Domain& d, int samples);
/// ‖(p1,p2,p3)‖ with the componentwise-max modulus at each point.
SupNorm sup_norm(std::span<const LaurentPoly> components, const Domain& d, int samples);
SupNorm sup_norm(std::span<const LaurentPoly> components, const Domain& d, int n_u, int n_v);

}  // namespace maxface
