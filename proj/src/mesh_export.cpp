#include "maxface/mesh_export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "maxface/errors.hpp"
#include "maxface/kernels.hpp"

namespace maxface::mesh {

std::vector<int> SurfaceMesh::singular_indices() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < singular.size(); ++i) {
    if (singular[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

struct Sample {
  Vec3 x;
  char flag;
};

template <class MapFn>
SurfaceMesh sample_with(const MaxfaceSolution& sol, const WeierstrassData* w, const Domain& d,
                        int n_u, int n_v, MapFn&& map) {
  if (n_u < kMinGrid || n_v < kMinGrid) {
    throw std::invalid_argument("surface grid needs at least 8x8 samples");
  }
  SurfaceMesh m;
  m.n_u = n_u;
  m.n_v = n_v;
  m.seam_closed = std::holds_alternative<Annulus>(d);
  m.parameters = grid_points(d, n_u, n_v);
  std::vector<Sample> out(m.parameters.size());
  map(std::span<const cplx>(m.parameters), std::span<Sample>(out), [&](cplx z) {
    Sample s{eval_immersion(sol, z), 0};
    if (w != nullptr) s.flag = std::abs(std::abs(w->g(z)) - 1.0) < kSingularFlagTol ? 1 : 0;
    return s;
  });
  m.vertices.reserve(out.size());
  m.singular.reserve(out.size());
  for (const auto& s : out) {
    m.vertices.push_back(s.x);
    m.singular.push_back(s.flag);
  }
  const int cols = m.seam_closed ? n_v : n_v - 1;
  for (int i = 0; i + 1 < n_u; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int j1 = (j + 1) % n_v;
      m.faces.push_back({i * n_v + j, (i + 1) * n_v + j, (i + 1) * n_v + j1, i * n_v + j1});
    }
  }
  return m;
}

}  // namespace

SurfaceMesh sample_surface(const MaxfaceSolution& sol, const WeierstrassData* w, const Domain& d,
                           int n_u, int n_v) {
  return sample_with(sol, w, d, n_u, n_v, [](auto pts, auto out, auto f) {
    kernels::grid_map_parallel(pts, out, f);
  });
}

SurfaceMesh sample_surface_serial(const MaxfaceSolution& sol, const WeierstrassData* w,
                                  const Domain& d, int n_u, int n_v) {
  return sample_with(sol, w, d, n_u, n_v, [](auto pts, auto out, auto f) {
    kernels::grid_map_serial(pts, out, f);
  });
}

Polyline singular_image_curve(const MaxfaceSolution& sol, const SingularCurve& curve, int samples,
                              const std::vector<double>& marked) {
  if (samples < kMinCurveSamples) {
    throw std::invalid_argument("singular image curve needs at least 64 samples");
  }
  std::vector<std::pair<double, bool>> ts;
  for (double t : curve.samples(samples)) ts.emplace_back(t, false);
  for (double t : marked) ts.emplace_back(t, true);
  std::stable_sort(ts.begin(), ts.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  Polyline p;
  for (const auto& [t, mark] : ts) {
    if (mark) p.marked.push_back(static_cast<int>(p.t.size()));
    p.t.push_back(t);
    p.points.push_back(eval_immersion(sol, curve.point(t)));
  }
  double spread = 0.0;
  for (const auto& x : p.points) {
    for (int k = 0; k < 3; ++k) spread = std::max(spread, std::abs(x[k] - p.points.front()[k]));
  }
  if (spread < 1e-8) {
    p.cone_point = true;
    p.t.resize(1);
    p.points.resize(1);
    p.marked.clear();
  }
  return p;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw IoError("write failed: " + path.string());
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& obj_path) {
  auto p = obj_path;
  p.replace_extension(".sing");
  return p;
}

void write_obj(const SurfaceMesh& mesh, const std::filesystem::path& path) {
  if (mesh.vertices.empty() || mesh.faces.empty()) throw IoError("refusing to write an empty mesh");
  const int nv = static_cast<int>(mesh.vertices.size());
  for (const auto& f : mesh.faces) {
    for (int i : f) {
      if (i < 0 || i >= nv) throw std::out_of_range("face index out of range");
    }
  }
  auto os = open_out(path);
  os << "# maxface surface: coordinates (x1, x2, x3), x3 is the timelike axis\n";
  os << "# grid " << mesh.n_u << "x" << mesh.n_v << (mesh.seam_closed ? " seam-closed" : "") << "\n";
  for (const auto& v : mesh.vertices) {
    os << "v " << fmt17(v[0]) << ' ' << fmt17(v[1]) << ' ' << fmt17(v[2]) << '\n';
  }
  for (const auto& f : mesh.faces) {
    os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' ' << f[3] + 1 << '\n';
  }
  finish(os, path);

  const auto sing = sidecar_path(path);
  auto ss = open_out(sing);
  ss << "# 1-based indices of vertices with ||g|-1| < " << kSingularFlagTol << "\n";
  for (int i : mesh.singular_indices()) ss << i + 1 << '\n';
  finish(ss, sing);
}

void write_polyline_csv(const Polyline& poly, const std::filesystem::path& path) {
  if (poly.points.empty()) throw IoError("refusing to write an empty polyline");
  auto os = open_out(path);
  os << "t,x,y,z\n";
  for (std::size_t i = 0; i < poly.points.size(); ++i) {
    const auto& x = poly.points[i];
    os << fmt17(poly.t[i]) << ',' << fmt17(x[0]) << ',' << fmt17(x[1]) << ',' << fmt17(x[2]) << '\n';
  }
  finish(os, path);
}

SurfaceMesh read_obj(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  SurfaceMesh m;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      std::string a, b, c;
      ls >> a >> b >> c;
      if (!ls) throw IoError("malformed vertex line: " + line);
      m.vertices.push_back({std::strtod(a.c_str(), nullptr), std::strtod(b.c_str(), nullptr),
                            std::strtod(c.c_str(), nullptr)});
    } else if (tag == "f") {
      std::array<int, 4> f{};
      for (int& i : f) {
        ls >> i;
        --i;
      }
      if (!ls) throw IoError("malformed face line: " + line);
      m.faces.push_back(f);
    }
  }
  m.singular.assign(m.vertices.size(), 0);
  std::ifstream ss(sidecar_path(path));
  while (ss && std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    const int i = std::stoi(line) - 1;
    if (i < 0 || i >= static_cast<int>(m.vertices.size())) {
      throw IoError("sidecar index out of range: " + line);
    }
    m.singular[i] = 1;
  }
  return m;
}

}  // namespace maxface::mesh
