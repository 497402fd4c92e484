#include "maxface/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "maxface/errors.hpp"
#include "maxface/kernels.hpp"

namespace maxface {

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(std::map<int, cplx> coefficients) : coeffs_(std::move(coefficients)) {
  prune();
}

LaurentPoly LaurentPoly::constant(cplx c) { return LaurentPoly({{0, c}}); }

LaurentPoly LaurentPoly::monomial(int exponent, cplx c) { return LaurentPoly({{exponent, c}}); }

void LaurentPoly::prune() {
  std::erase_if(coeffs_, [](const auto& kv) { return std::abs(kv.second) < kZeroThreshold; });
}

cplx LaurentPoly::coeff(int exponent) const {
  auto it = coeffs_.find(exponent);
  return it == coeffs_.end() ? cplx{} : it->second;
}

int LaurentPoly::min_exponent() const {
  if (coeffs_.empty()) throw std::logic_error("min_exponent of zero Laurent polynomial");
  return coeffs_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  if (coeffs_.empty()) throw std::logic_error("max_exponent of zero Laurent polynomial");
  return coeffs_.rbegin()->first;
}

cplx LaurentPoly::operator()(cplx z) const {
  if (coeffs_.empty()) return {};
  const int lo = coeffs_.begin()->first;
  const int hi = coeffs_.rbegin()->first;
  if (z == cplx{} && lo < 0) {
    throw DomainError("Laurent polynomial with negative powers evaluated at z = 0");
  }
  // Horner in z for k >= 0 and in 1/z for k < 0.
  cplx pos{};
  if (hi >= 0) {
    auto it = coeffs_.rbegin();
    for (int k = hi; k >= 0; --k) {
      pos *= z;
      if (it != coeffs_.rend() && it->first == k) {
        pos += it->second;
        ++it;
      }
    }
  }
  cplx neg{};
  if (lo < 0) {
    const cplx w = 1.0 / z;
    auto it = coeffs_.begin();
    for (int k = lo; k < 0; ++k) {
      neg = neg * w;
      if (it != coeffs_.end() && it->first == k) {
        neg += it->second;
        ++it;
      }
    }
    neg *= w;
  }
  return pos + neg;
}

LaurentPoly LaurentPoly::derivative() const {
  std::map<int, cplx> out;
  for (const auto& [k, c] : coeffs_) {
    if (k != 0) out[k - 1] = static_cast<double>(k) * c;
  }
  return LaurentPoly(std::move(out));
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  for (const auto& [k, c] : other.coeffs_) coeffs_[k] += c;
  prune();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  for (const auto& [k, c] : other.coeffs_) coeffs_[k] -= c;
  prune();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(cplx s) {
  for (auto& kv : coeffs_) kv.second *= s;
  prune();
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  std::map<int, cplx> out;
  for (const auto& [ka, ca] : a.coeffs_) {
    for (const auto& [kb, cb] : b.coeffs_) out[ka + kb] += ca * cb;
  }
  return LaurentPoly(std::move(out));
}

double coefficient_distance(const LaurentPoly& a, const LaurentPoly& b) {
  double d = 0.0;
  for (const auto& [k, c] : a.coeffs_) d = std::max(d, std::abs(c - b.coeff(k)));
  for (const auto& [k, c] : b.coeffs_) {
    if (!a.coeffs_.contains(k)) d = std::max(d, std::abs(c));
  }
  return d;
}

double LaurentPoly::l1_norm() const {
  double s = 0.0;
  for (const auto& kv : coeffs_) s += std::abs(kv.second);
  return s;
}

std::string LaurentPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& [k, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (k != 0) os << "z^" << k;
  }
  return os.str();
}

cplx eval(const LaurentPoly& p, cplx z) { return p(z); }

LaurentPoly differentiate(const LaurentPoly& p) { return p.derivative(); }

Antiderivative antiderivative(const LaurentPoly& p) {
  std::map<int, cplx> out;
  Antiderivative a;
  for (const auto& [k, c] : p.coefficients()) {
    if (k == -1) {
      a.log_coeff = c;
    } else {
      out[k + 1] = c / static_cast<double>(k + 1);
    }
  }
  a.poly_part = LaurentPoly(std::move(out));
  return a;
}

cplx Antiderivative::increment(cplx z0, cplx z) const {
  cplx v = poly_part(z) - poly_part(z0);
  if (log_coeff != cplx{}) {
    const cplx ratio = z / z0;
    v += log_coeff * cplx(std::log(std::abs(z) / std::abs(z0)), std::arg(ratio));
  }
  return v;
}

double Antiderivative::real_increment(cplx z0, cplx z) const {
  double v = (poly_part(z) - poly_part(z0)).real();
  if (log_coeff != cplx{}) {
    v += log_coeff.real() * std::log(std::abs(z) / std::abs(z0));
    if (log_coeff.imag() != 0.0) v -= log_coeff.imag() * std::arg(z / z0);
  }
  return v;
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den,
                                        double rel_tol) {
  if (den.is_zero()) throw DomainError("division by the zero Laurent polynomial");
  if (num.is_zero()) return LaurentPoly{};
  // Shift both to ordinary polynomials with nonzero constant terms. Monomials
  // are units in the Laurent ring, so exact divisibility is decided by
  // polynomial long division of the shifted numerator by the shifted
  // denominator.
  const int num_lo = num.min_exponent();
  const int den_lo = den.min_exponent();
  const int num_deg = num.max_exponent() - num_lo;
  const int den_deg = den.max_exponent() - den_lo;
  if (den_deg > num_deg) return std::nullopt;

  std::vector<cplx> r(num_deg + 1);
  for (const auto& [k, c] : num.coefficients()) r[k - num_lo] = c;
  std::vector<cplx> d(den_deg + 1);
  for (const auto& [k, c] : den.coefficients()) d[k - den_lo] = c;

  std::vector<cplx> q(num_deg - den_deg + 1);
  for (int i = num_deg - den_deg; i >= 0; --i) {
    const cplx qi = r[i + den_deg] / d[den_deg];
    q[i] = qi;
    for (int j = 0; j <= den_deg; ++j) r[i + j] -= qi * d[j];
  }
  double rem = 0.0;
  for (const auto& c : r) rem = std::max(rem, std::abs(c));
  if (rem > rel_tol * std::max(1.0, num.l1_norm())) return std::nullopt;

  std::map<int, cplx> out;
  for (int i = 0; i < static_cast<int>(q.size()); ++i) out[i + num_lo - den_lo] = q[i];
  return LaurentPoly(std::move(out));
}

// ------------------------------------------------------------------- TrigPoly

TrigPoly::TrigPoly(double const_term, std::map<int, double> cos_coeffs,
                   std::map<int, double> sin_coeffs)
    : const_(const_term), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  for (const auto& kv : cos_) {
    if (kv.first < 1) throw std::invalid_argument("trig cos frequency must be >= 1");
  }
  for (const auto& kv : sin_) {
    if (kv.first < 1) throw std::invalid_argument("trig sin frequency must be >= 1");
  }
  prune();
}

TrigPoly TrigPoly::constant(double c) { return TrigPoly(c, {}, {}); }
TrigPoly TrigPoly::cos(int k, double a) { return k == 0 ? constant(a) : TrigPoly(0.0, {{k, a}}, {}); }
TrigPoly TrigPoly::sin(int k, double b) { return k == 0 ? TrigPoly{} : TrigPoly(0.0, {}, {{k, b}}); }

void TrigPoly::prune() {
  if (std::abs(const_) < kZeroThreshold) const_ = 0.0;
  std::erase_if(cos_, [](const auto& kv) { return std::abs(kv.second) < kZeroThreshold; });
  std::erase_if(sin_, [](const auto& kv) { return std::abs(kv.second) < kZeroThreshold; });
}

int TrigPoly::degree() const {
  int d = 0;
  if (!cos_.empty()) d = std::max(d, cos_.rbegin()->first);
  if (!sin_.empty()) d = std::max(d, sin_.rbegin()->first);
  return d;
}

double TrigPoly::operator()(double t) const {
  double v = const_;
  for (const auto& [k, a] : cos_) v += a * std::cos(k * t);
  for (const auto& [k, b] : sin_) v += b * std::sin(k * t);
  return v;
}

TrigPoly TrigPoly::derivative() const {
  std::map<int, double> c, s;
  for (const auto& [k, a] : cos_) s[k] += -k * a;
  for (const auto& [k, b] : sin_) c[k] += k * b;
  return TrigPoly(0.0, std::move(c), std::move(s));
}

double TrigPoly::max_abs_coeff() const {
  double m = std::abs(const_);
  for (const auto& kv : cos_) m = std::max(m, std::abs(kv.second));
  for (const auto& kv : sin_) m = std::max(m, std::abs(kv.second));
  return m;
}

TrigPoly TrigPoly::from_laurent(const LaurentPoly& p) {
  // c_k e^{ikt} + c_{-k} e^{-ikt} = (c_k + c_-k) cos kt + i(c_k - c_-k) sin kt.
  std::map<int, double> c, s;
  int deg = 0;
  for (const auto& kv : p.coefficients()) deg = std::max(deg, std::abs(kv.first));
  for (int k = 1; k <= deg; ++k) {
    const cplx ck = p.coeff(k);
    const cplx cmk = p.coeff(-k);
    c[k] = (ck + cmk).real();
    s[k] = (cplx(0, 1) * (ck - cmk)).real();
  }
  return TrigPoly(p.coeff(0).real(), std::move(c), std::move(s));
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  const_ += o.const_;
  for (const auto& [k, a] : o.cos_) cos_[k] += a;
  for (const auto& [k, b] : o.sin_) sin_[k] += b;
  prune();
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) {
  const_ -= o.const_;
  for (const auto& [k, a] : o.cos_) cos_[k] -= a;
  for (const auto& [k, b] : o.sin_) sin_[k] -= b;
  prune();
  return *this;
}

TrigPoly& TrigPoly::operator*=(double s) {
  const_ *= s;
  for (auto& kv : cos_) kv.second *= s;
  for (auto& kv : sin_) kv.second *= s;
  prune();
  return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  return TrigPoly::from_laurent(trig_to_laurent(a) * trig_to_laurent(b));
}

LaurentPoly trig_to_laurent(const TrigPoly& q) {
  std::map<int, cplx> out;
  out[0] += q.const_term();
  for (const auto& [k, a] : q.cos_coeffs()) {
    out[k] += 0.5 * a;
    out[-k] += 0.5 * a;
  }
  // b sin kt = (b / 2i)(z^k - z^-k) = (-i b / 2) z^k + (i b / 2) z^-k
  for (const auto& [k, b] : q.sin_coeffs()) {
    out[k] += cplx(0.0, -0.5 * b);
    out[-k] += cplx(0.0, 0.5 * b);
  }
  return LaurentPoly(std::move(out));
}

// ------------------------------------------------------------------- RealPoly

RealPoly::RealPoly(std::vector<double> coefficients) : c_(std::move(coefficients)) { trim(); }

void RealPoly::trim() {
  for (auto& c : c_) {
    if (std::abs(c) < kZeroThreshold) c = 0.0;
  }
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double RealPoly::operator()(double t) const {
  double v = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
  return v;
}

cplx RealPoly::operator()(cplx z) const {
  cplx v{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * z + *it;
  return v;
}

RealPoly RealPoly::derivative() const {
  if (c_.size() <= 1) return RealPoly{};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return RealPoly(std::move(d));
}

double RealPoly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::abs(c));
  return m;
}

RealPoly& RealPoly::operator+=(const RealPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

RealPoly& RealPoly::operator-=(const RealPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

RealPoly& RealPoly::operator*=(double s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

RealPoly operator*(const RealPoly& a, const RealPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return RealPoly{};
  std::vector<double> out(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return RealPoly(std::move(out));
}

LaurentPoly poly_to_laurent(const RealPoly& p) {
  std::map<int, cplx> out;
  const auto& c = p.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) out[static_cast<int>(k)] = c[k];
  return LaurentPoly(std::move(out));
}

// -------------------------------------------------------------- ParamFunction

namespace {

// Constants are representable in both families; promote them so that constant
// or zero components mix with trig data.
bool is_constant(const ParamFunction& f) {
  if (f.is_poly()) return f.poly().degree() <= 0;
  return f.trig().degree() == 0;
}

double constant_value(const ParamFunction& f) {
  if (f.is_poly()) return f.poly().coefficients().empty() ? 0.0 : f.poly().coefficients()[0];
  return f.trig().const_term();
}

TrigPoly as_trig(const ParamFunction& f) {
  if (f.is_trig()) return f.trig();
  if (is_constant(f)) return TrigPoly::constant(constant_value(f));
  throw UnsupportedError("cannot combine a polynomial with a trigonometric polynomial");
}

RealPoly as_poly(const ParamFunction& f) {
  if (f.is_poly()) return f.poly();
  if (is_constant(f)) return RealPoly::constant(constant_value(f));
  throw UnsupportedError("cannot combine a trigonometric polynomial with a polynomial");
}

template <class Op>
ParamFunction combine(const ParamFunction& a, const ParamFunction& b, Op op) {
  if (a.is_trig() == b.is_trig()) {
    if (a.is_trig()) return op(a.trig(), b.trig());
    return op(a.poly(), b.poly());
  }
  const ParamFunction& p = a.is_poly() ? a : b;
  if (is_constant(p)) return op(as_trig(a), as_trig(b));
  return op(as_poly(a), as_poly(b));
}

}  // namespace

double ParamFunction::operator()(double t) const {
  return std::visit([t](const auto& f) { return f(t); }, rep_);
}

ParamFunction ParamFunction::derivative() const {
  return std::visit([](const auto& f) { return ParamFunction(f.derivative()); }, rep_);
}

double ParamFunction::max_abs_coeff() const {
  return std::visit([](const auto& f) { return f.max_abs_coeff(); }, rep_);
}

LaurentPoly ParamFunction::to_laurent() const {
  if (is_trig()) return trig_to_laurent(trig());
  return poly_to_laurent(poly());
}

bool ParamFunction::same_family(const ParamFunction& o) const {
  return is_trig() == o.is_trig() || is_constant(*this) || is_constant(o);
}

ParamFunction operator+(const ParamFunction& a, const ParamFunction& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return ParamFunction(x + y); });
}

ParamFunction operator-(const ParamFunction& a, const ParamFunction& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return ParamFunction(x - y); });
}

ParamFunction operator*(const ParamFunction& a, const ParamFunction& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return ParamFunction(x * y); });
}

ParamFunction operator*(double s, const ParamFunction& a) {
  return std::visit([s](const auto& f) { return ParamFunction(s * f); }, a.rep_);
}

// --------------------------------------------------------------------- Domain

void check_domain(const Domain& d) {
  if (const auto* a = std::get_if<Annulus>(&d)) {
    if (!(a->r_in > 0.0) || !(a->r_out > a->r_in)) {
      throw std::invalid_argument("annulus requires 0 < r_in < r_out");
    }
  } else {
    const auto& r = std::get<Rectangle>(d);
    if (!(r.u_max > r.u_min) || !(r.v_max > r.v_min)) {
      throw std::invalid_argument("rectangle requires u_min < u_max and v_min < v_max");
    }
  }
}

bool contains(const Domain& d, cplx z, double slack) {
  if (const auto* a = std::get_if<Annulus>(&d)) {
    const double r = std::abs(z);
    return r >= a->r_in - slack && r <= a->r_out + slack;
  }
  const auto& r = std::get<Rectangle>(d);
  return z.real() >= r.u_min - slack && z.real() <= r.u_max + slack &&
         z.imag() >= r.v_min - slack && z.imag() <= r.v_max + slack;
}

std::vector<cplx> grid_points(const Domain& d, int n_u, int n_v) {
  if (n_u < 2 || n_v < 2) throw std::invalid_argument("grid needs at least 2x2 samples");
  check_domain(d);
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(n_u) * n_v);
  if (const auto* a = std::get_if<Annulus>(&d)) {
    for (int i = 0; i < n_u; ++i) {
      const double r = a->r_in + (a->r_out - a->r_in) * i / (n_u - 1);
      for (int j = 0; j < n_v; ++j) {
        pts.push_back(std::polar(r, 2.0 * std::numbers::pi * j / n_v));
      }
    }
  } else {
    const auto& r = std::get<Rectangle>(d);
    for (int i = 0; i < n_u; ++i) {
      const double u = r.u_min + (r.u_max - r.u_min) * i / (n_u - 1);
      for (int j = 0; j < n_v; ++j) {
        pts.emplace_back(u, r.v_min + (r.v_max - r.v_min) * j / (n_v - 1));
      }
    }
  }
  return pts;
}

double max_modulus(const Domain& d) {
  if (const auto* a = std::get_if<Annulus>(&d)) return a->r_out;
  const auto& r = std::get<Rectangle>(d);
  return std::hypot(std::max(std::abs(r.u_min), std::abs(r.u_max)),
                    std::max(std::abs(r.v_min), std::abs(r.v_max)));
}

double min_modulus(const Domain& d) {
  if (const auto* a = std::get_if<Annulus>(&d)) return a->r_in;
  const auto& r = std::get<Rectangle>(d);
  const double du = r.u_min > 0 ? r.u_min : (r.u_max < 0 ? -r.u_max : 0.0);
  const double dv = r.v_min > 0 ? r.v_min : (r.v_max < 0 ? -r.v_max : 0.0);
  return std::hypot(du, dv);
}

std::string describe(const Domain& d) {
  std::ostringstream os;
  if (const auto* a = std::get_if<Annulus>(&d)) {
    os << "annulus(" << a->r_in << ", " << a->r_out << ")";
  } else {
    const auto& r = std::get<Rectangle>(d);
    os << "rectangle([" << r.u_min << ", " << r.u_max << "] x [" << r.v_min << ", " << r.v_max
       << "])";
  }
  return os.str();
}

// ------------------------------------------------------------------- sup norm

double coefficient_bound(const LaurentPoly& p, const Domain& d) {
  const double r_max = max_modulus(d);
  const double r_min = min_modulus(d);
  double bound = 0.0;
  for (const auto& [k, c] : p.coefficients()) {
    double m;
    if (k >= 0) {
      m = std::pow(r_max, k);
    } else if (r_min == 0.0) {
      return std::numeric_limits<double>::infinity();
    } else {
      m = std::pow(r_min, k);
    }
    bound += std::abs(c) * m;
  }
  return bound;
}

SupNorm sup_norm(const LaurentPoly& p, const Domain& d, int samples) {
  return sup_norm(std::span<const LaurentPoly>(&p, 1), d, samples);
}

SupNorm sup_norm(std::span<const LaurentPoly> components, const Domain& d, int samples) {
  return sup_norm(components, d, samples, samples);
}

SupNorm sup_norm(std::span<const LaurentPoly> components, const Domain& d, int n_u, int n_v) {
  if (n_u < kMinSupSamples || n_v < kMinSupSamples) {
    throw std::invalid_argument("sup_norm needs at least 64 samples per direction");
  }
  const auto pts = grid_points(d, n_u, n_v);
  SupNorm out;
  out.grid_estimate = kernels::grid_max_parallel(pts, [&](cplx z) {
    double m = 0.0;
    for (const auto& p : components) m = std::max(m, std::abs(p(z)));
    return m;
  });
  for (const auto& p : components) out.coefficient_bound = std::max(out.coefficient_bound, coefficient_bound(p, d));
  return out;
}

}  // namespace maxface
