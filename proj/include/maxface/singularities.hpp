#pragma once

// Singularity invariants along the prescribed singular curve and the
// swallowtail / shrinking / generalized cone-like verdicts.
//
// Notation: s(t) = α3'λ1' + β3λ2' is both H(t) = Det(λ', η) and the factor
// that decides Im A = 0; H'(t) is its exact derivative. D_α = α1'α2'' -
// α2'α1'' and D_β = β1β2' - β2β1'.

#include <optional>
#include <string>
#include <vector>

#include "maxface/bjorling.hpp"

namespace maxface {

struct Tolerances {
  double root = 1e-12;     ///< |s| below this counts as a root
  double nonzero = 1e-8;   ///< |H'|, |Re A| and normalized D above this count as nonzero
};

enum class Branch { None, Alpha, Beta, Both };
enum class SingularityKind { Swallowtail, ShrinkingComponent, FrontNonSwallowtail, Indeterminate };

std::string to_string(Branch b);
std::string to_string(SingularityKind k);

/// Global sign relating g'/(g²f) to the case formula built from α', β:
/// A = kCaseFormulaSign * A_case at every regular singular point.
inline constexpr double kCaseFormulaSign = -1.0;

struct Diagnostics {
  double t = 0.0;
  double re_A = 0.0;
  double im_A = 0.0;
  bool a_from_weierstrass = false;  ///< false: A taken from the case formula
  double s = 0.0;                    ///< α3'λ1' + β3λ2'
  double H = 0.0;
  double H_prime = 0.0;
  double D_alpha = 0.0;
  double D_beta = 0.0;
  Branch branch = Branch::None;
  /// Case-formula value of A for each applicable branch.
  std::optional<cplx> case_alpha;
  std::optional<cplx> case_beta;
};

/// The derivatives of λ, α', β needed by every criterion, computed once.
class CriteriaFunctions {
 public:
  explicit CriteriaFunctions(const BjorlingData& data);

  double s(double t) const { return s_(t); }
  double s_prime(double t) const { return ds_(t); }
  const ParamFunction& s_function() const { return s_; }

  double alpha3(double t) const { return a3_(t); }
  double beta3(double t) const { return b3_(t); }
  double d_alpha(double t) const;
  double d_beta(double t) const;
  cplx lambda_prime(double t) const { return {dl1_(t), dl2_(t)}; }
  /// Case formula for A with the α- or β-branch (branch must apply).
  cplx case_formula(double t, Branch which) const;

 private:
  ParamFunction dl1_, dl2_;
  ParamFunction a1_, a2_, a3_, da1_, da2_;
  ParamFunction b1_, b2_, b3_, db1_, db2_;
  ParamFunction s_, ds_;
};

/// η(t) = -β3(t) + i α3'(t). Throws DomainError when both vanish.
cplx null_direction(const BjorlingData& data, double t);

/// g'/(g² f) at λ(t). Throws DomainError at zeros of g, f or the Gauss-map
/// denominator.
cplx a_function(const BjorlingData& data, const WeierstrassData& w, double t);

struct HValues {
  double H = 0.0;
  double H_prime = 0.0;
};

/// H = λ1'α3' + λ2'β3 and its exact derivative.
HValues h_and_h_prime(const BjorlingData& data, double t);

struct ClassifiedPoint {
  Diagnostics diagnostics;
  SingularityKind kind = SingularityKind::Indeterminate;
};

/// Pointwise verdict. Without Weierstrass data (general curves) A is taken
/// from the case formula times kCaseFormulaSign.
ClassifiedPoint classify_point(const BjorlingData& data, const WeierstrassData* w, double t,
                               const Tolerances& tol = {});
ClassifiedPoint classify_point(const CriteriaFunctions& fns, const BjorlingData& data,
                               const WeierstrassData* w, double t, const Tolerances& tol);

struct SingularPointReport {
  struct Entry {
    double t = 0.0;
    Diagnostics diagnostics;
    SingularityKind kind = SingularityKind::Indeterminate;
    bool sign_change = true;  ///< false for |s| dips without a sign change
  };
  std::vector<Entry> entries;
  std::vector<double> swallowtail_parameters;
  /// s ≡ 0: the whole curve satisfies Im A = 0, no isolated roots.
  bool s_identically_zero = false;
};

inline constexpr int kMinResolution = 256;

/// Scans s on `resolution` parameters, refines sign changes by bisection and
/// |s| dips by golden-section search, then classifies every root.
SingularPointReport find_swallowtails(const BjorlingData& data, const WeierstrassData* w,
                                      int resolution = 1024, const Tolerances& tol = {});

struct ShrinkingReport {
  bool shrinking = false;
  bool s_vanishes = false;          ///< s ≡ 0 as an exact identity
  double s_max_coeff = 0.0;
  bool segment_alpha_constant = true;  ///< segment curves: α' ≡ 0
  bool d_nonzero = false;           ///< normalized D nonvanishing on the grid
  double min_normalized_d = 0.0;
  int failing_samples = 0;
};

ShrinkingReport check_shrinking(const BjorlingData& data, int grid = kValidationGrid,
                                const Tolerances& tol = {});

struct ConeLikeReport {
  bool conelike = false;
  bool shrinking = false;
  Vec3 image_point{};
  double max_deviation = 0.0;
};

/// Shrinking data on a compact trace whose image X(λ) is a single point.
ConeLikeReport check_generalized_conelike(const BjorlingData& data, const MaxfaceSolution& sol,
                                          double t0 = 0.0, double tol = 1e-8,
                                          int samples = kValidationGrid);

}  // namespace maxface
