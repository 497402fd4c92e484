#pragma once

// Scaling-function families, the deformation of shrinking data into
// swallowtail-bearing data, swallowtail census and the sup-norm convergence
// certificate ‖X_n - X‖ ≤ L ‖g_n‖.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "maxface/bjorling.hpp"
#include "maxface/singularities.hpp"

namespace maxface {

struct ScalingMember {
  int n = 0;
  ParamFunction f;
  std::vector<double> zeros;
  int a_n = -1;  ///< zeros are indexed 0..a_n
};

/// f_n(t) = ∏_{i=1}^{n} (t - 1/i) / ((r+1)^n n).
ScalingMember segment_family(double r, int n);
/// f_n(t) = cos(nt) / (2^{n+2} n).
ScalingMember circle_family(int n);

struct SegmentFamily {
  double r = 1.0;
};
struct CircleFamily {};
struct CustomFamily {
  /// Indexed by n; each member lists its own zeros.
  std::map<int, ScalingMember> members;
};

class ScalingFamily {
 public:
  ScalingFamily(SegmentFamily s);  // NOLINT(implicit)
  ScalingFamily(CircleFamily c);   // NOLINT(implicit)
  ScalingFamily(CustomFamily c);   // NOLINT(implicit)

  std::string name() const;
  bool is_segment() const { return std::holds_alternative<SegmentFamily>(kind_); }
  /// Throws std::out_of_range for n < 1 or a missing custom member.
  ScalingMember member(int n) const;

 private:
  std::variant<SegmentFamily, CircleFamily, CustomFamily> kind_;
};

inline constexpr int kNormSamples = 256;

struct ScalingAxiomReport {
  int n = 0;
  std::vector<ConditionResult> items;
  SupNorm g_norm;
  /// Informational: Re ∮ of the deformed ψ_n closes (needed for a single-valued X_n).
  bool deformed_period_closed = true;

  bool passed() const;
};

struct ScalingRangeReport {
  std::vector<ScalingAxiomReport> per_n;
  bool norms_decreasing = false;
  bool passed() const;
};

/// Checks the scaling-function axioms for one n.
ScalingAxiomReport verify_scaling_axioms(const ScalingFamily& fam, const BjorlingData& data,
                                         const Domain& d, int n, int samples = kNormSamples);
/// Runs every n in [n_min, n_max] and checks ‖g_n‖ strictly decreasing.
ScalingRangeReport verify_scaling_range(const ScalingFamily& fam, const BjorlingData& data,
                                        const Domain& d, int n_min, int n_max,
                                        int samples = kNormSamples);

struct DeformedData {
  int n = 0;
  ScalingMember member;
  BjorlingData data;
  /// g_n = f_n (α' - iβ) extended; empty for criteria-only curves.
  std::optional<PhiForm> g;
  std::optional<PhiForm> psi;
  ValidationReport validation;
};

/// α_n' = α' + f_n β, β_n = β - f_n α' (segment families keep β_n = β).
/// Throws InvalidDataError when the base data is not shrinking.
DeformedData deform(const BjorlingData& data, const ScalingFamily& fam, int n);
DeformedData deform(const BjorlingData& data, const ScalingMember& member, bool segment_variant);

struct Census {
  int count = 0;
  int expected = 0;  ///< a_n + 1
  bool shortfall = false;
  SingularPointReport report;
};

inline constexpr int kCensusResolution = 4096;

Census swallowtail_census(const DeformedData& dd, const WeierstrassData* w,
                          int resolution = kCensusResolution, const Tolerances& tol = {});

/// Length of the radial-then-arc path from `basepoint` to z (annulus), or of
/// the straight segment (rectangle).
double path_length(const Domain& d, cplx basepoint, cplx z);
double path_bound(const Domain& d, cplx basepoint, int n_u, int n_v);

/// max over pts and components of |a(z) - b(z)|.
double sup_difference_serial(const MaxfaceSolution& a, const MaxfaceSolution& b,
                             const std::vector<cplx>& pts);
double sup_difference_parallel(const MaxfaceSolution& a, const MaxfaceSolution& b,
                               const std::vector<cplx>& pts);

struct ConvergenceRow {
  int n = 0;
  int a_n = 0;
  int swallowtail_count = 0;
  int expected_count = 0;
  bool shortfall = false;
  SupNorm g_n_norm;
  double path_bound_L = 0.0;
  double certified_bound = 0.0;  ///< L times the rigorous ‖g_n‖ bound
  double measured_sup_diff = 0.0;
  bool period_closed = true;
  /// Segment families: L(‖α_n' - α'‖ + ‖β_n - β‖) with rigorous norms.
  std::optional<double> segment_bound;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double L = 0.0;
  bool within_bounds = false;
  bool bounds_decreasing = false;
  bool measured_decreasing = false;
};

struct ConvergenceOptions {
  int n_min = 1;
  int n_max = 10;
  int n_u = 256;
  int n_v = 256;
  int census_resolution = kCensusResolution;
  Tolerances tol{};
};

/// Throws InvalidDataError when the scaling axioms fail on the range.
ConvergenceReport convergence_report(const MaxfaceSolution& base_sol, const ScalingFamily& fam,
                                     const BjorlingData& data, const Domain& d,
                                     const ConvergenceOptions& opt = {});

}  // namespace maxface
