#pragma once

// Surface sampling on the parameter grid and ASCII export: OBJ quads with a
// `.sing` sidecar of singular vertex indices, and `t,x,y,z` CSV polylines.

#include <array>
#include <filesystem>
#include <vector>

#include "maxface/bjorling.hpp"

namespace maxface::mesh {

/// Vertices within this of |g| = 1 are flagged singular.
inline constexpr double kSingularFlagTol = 1e-6;
inline constexpr int kMinGrid = 8;
inline constexpr int kMinCurveSamples = 64;

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> faces;  ///< 0-based
  std::vector<char> singular;             ///< per vertex
  std::vector<cplx> parameters;           ///< z of each vertex
  int n_u = 0;
  int n_v = 0;
  bool seam_closed = false;

  std::vector<int> singular_indices() const;
};

/// X on the grid_points(d, n_u, n_v) grid. Annulus grids close the angular
/// seam. With w, vertices where ||g|-1| < kSingularFlagTol are flagged.
SurfaceMesh sample_surface(const MaxfaceSolution& sol, const WeierstrassData* w, const Domain& d,
                           int n_u, int n_v);
SurfaceMesh sample_surface_serial(const MaxfaceSolution& sol, const WeierstrassData* w,
                                  const Domain& d, int n_u, int n_v);

struct Polyline {
  std::vector<double> t;
  std::vector<Vec3> points;
  std::vector<int> marked;  ///< indices of inserted marked parameters
  bool cone_point = false;  ///< whole curve collapsed to points[0]
};

/// X(λ(t)) on `samples` parameters plus the `marked` ones. A curve whose
/// image stays within 1e-8 of one point collapses to that cone point.
Polyline singular_image_curve(const MaxfaceSolution& sol, const SingularCurve& curve, int samples,
                              const std::vector<double>& marked = {});

/// Writes the OBJ and `<stem>.sing` next to it. Throws IoError.
void write_obj(const SurfaceMesh& mesh, const std::filesystem::path& path);
void write_polyline_csv(const Polyline& poly, const std::filesystem::path& path);

/// Parses `v` and `f` lines of an OBJ written by write_obj, and the flags of
/// its `.sing` sidecar when present.
SurfaceMesh read_obj(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& obj_path);

}  // namespace maxface::mesh
