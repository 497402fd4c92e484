#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "maxface/errors.hpp"
#include "maxface/fixtures.hpp"
#include "maxface/mesh_export.hpp"

using namespace maxface;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("maxface_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream is(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

struct Solved {
  fixtures::Fixture fx;
  MaxfaceSolution sol;
  WeierstrassData w;
};

Solved solved(const fixtures::Fixture& fx) {
  return {fx, solve(fx.data, fx.domain, fx.t0), weierstrass_from_phi(build_phi(fx.data))};
}

}  // namespace

// ============================================
// Sampling
// ============================================

TEST(Sample, AnnulusClosesSeam) {
  const auto s = solved(fixtures::lorentzian_catenoid());
  const auto m = mesh::sample_surface(s.sol, &s.w, s.fx.domain, 16, 16);
  EXPECT_EQ(m.vertices.size(), 256u);
  EXPECT_EQ(m.faces.size(), 15u * 16u);
  EXPECT_TRUE(m.seam_closed);
}

TEST(Sample, RectangleGrid) {
  const auto s = solved(fixtures::shrinking_segment());
  const auto m = mesh::sample_surface(s.sol, &s.w, s.fx.domain, 8, 8);
  EXPECT_EQ(m.vertices.size(), 64u);
  EXPECT_EQ(m.faces.size(), 49u);
  EXPECT_FALSE(m.seam_closed);
  for (const auto& f : m.faces) {
    for (int i : f) {
      EXPECT_GE(i, 0);
      EXPECT_LT(i, 64);
    }
  }
}

TEST(Sample, VerticesAreTheImmersion) {
  const auto s = solved(fixtures::lorentzian_catenoid());
  const auto m = mesh::sample_surface(s.sol, &s.w, s.fx.domain, 12, 10);
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    const cplx z = m.parameters[i];
    const Vec3 x = m.vertices[i];
    EXPECT_NEAR(x[0], std::real((z - 1.0 / z) / 2.0), 1e-13);
    EXPECT_NEAR(x[2], -std::log(std::abs(z)), 1e-13);
  }
}

TEST(Sample, SerialMatchesParallel) {
  for (const auto& fx : {fixtures::lorentzian_catenoid(), fixtures::shrinking_segment()}) {
    const auto s = solved(fx);
    const auto a = mesh::sample_surface(s.sol, &s.w, fx.domain, 33, 17);
    const auto b = mesh::sample_surface_serial(s.sol, &s.w, fx.domain, 33, 17);
    EXPECT_EQ(a.vertices, b.vertices) << fx.name;
    EXPECT_EQ(a.faces, b.faces) << fx.name;
    EXPECT_EQ(a.singular, b.singular) << fx.name;
  }
}

TEST(Sample, RejectsCoarseGrid) {
  const auto s = solved(fixtures::lorentzian_catenoid());
  EXPECT_THROW(mesh::sample_surface(s.sol, &s.w, s.fx.domain, mesh::kMinGrid - 1, 16),
               std::invalid_argument);
}

TEST(Sample, FlagsMatchUnimodularGauss) {
  // Annulus radii 0.5 + 0.125 i: the unit circle is the fifth row.
  const auto s = solved(fixtures::lorentzian_catenoid());
  const auto m = mesh::sample_surface(s.sol, &s.w, s.fx.domain, 13, 24);
  const auto idx = m.singular_indices();
  ASSERT_EQ(idx.size(), 24u);
  for (int i : idx) EXPECT_NEAR(std::abs(m.parameters[i]), 1.0, 1e-15);
}

TEST(Sample, FlagProperty) {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 20; ++rep) {
    const WeierstrassData w{GaussMap{testgen::random_laurent(rng, -1, 1), std::nullopt},
                            testgen::random_laurent(rng, -2, 0)};
    const PhiForm phi = phi_from_weierstrass(w);
    const auto sol = solve_phi(phi, Annulus{}, 1.0, true);
    const auto m = mesh::sample_surface(sol, &w, Annulus{}, 9, 9);
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
      const bool expect = std::abs(std::abs(w.g(m.parameters[i])) - 1.0) < mesh::kSingularFlagTol;
      EXPECT_EQ(static_cast<bool>(m.singular[i]), expect);
    }
  }
}

TEST(Sample, NoWeierstrassMeansNoFlags) {
  const auto s = solved(fixtures::lorentzian_catenoid());
  const auto m = mesh::sample_surface(s.sol, nullptr, s.fx.domain, 13, 24);
  EXPECT_TRUE(m.singular_indices().empty());
}

// ============================================
// Singular image curve
// ============================================

TEST(ImageCurve, CatenoidRingCollapsesToConePoint) {
  const auto s = solved(fixtures::lorentzian_catenoid());
  const auto poly = mesh::singular_image_curve(s.sol, s.fx.data.curve, 128);
  EXPECT_TRUE(poly.cone_point);
  for (const auto& x : poly.points) EXPECT_LT(max_abs(x), 1e-10);
}

TEST(ImageCurve, PerturbedCatenoidIsACurveWithMarks) {
  const auto s = solved(fixtures::perturbed_catenoid(3));
  const std::vector<double> marks{0.3, 1.1};
  const auto poly = mesh::singular_image_curve(s.sol, s.fx.data.curve, 64, marks);
  EXPECT_FALSE(poly.cone_point);
  ASSERT_EQ(poly.marked.size(), 2u);
  for (std::size_t k = 0; k < marks.size(); ++k) EXPECT_DOUBLE_EQ(poly.t[poly.marked[k]], marks[k]);
  for (std::size_t i = 1; i < poly.t.size(); ++i) EXPECT_LT(poly.t[i - 1], poly.t[i]);
  for (std::size_t i = 0; i < poly.t.size(); ++i) {
    const Vec3 x = s.sol(s.fx.data.curve.point(poly.t[i]));
    for (int k = 0; k < 3; ++k) EXPECT_EQ(poly.points[i][k], x[k]);
  }
}

// ============================================
// Files
// ============================================

TEST(Files, ObjRoundTrip) {
  TempDir tmp;
  const auto s = solved(fixtures::shrinking_segment());
  const auto m = mesh::sample_surface(s.sol, &s.w, s.fx.domain, 9, 11);
  const fs::path p = tmp.path() / "surface.obj";
  mesh::write_obj(m, p);
  const auto back = mesh::read_obj(p);
  EXPECT_EQ(back.vertices, m.vertices);
  EXPECT_EQ(back.faces, m.faces);
  EXPECT_EQ(back.singular, m.singular);
}

TEST(Files, ObjLayout) {
  TempDir tmp;
  const auto s = solved(fixtures::shrinking_segment());
  const auto m = mesh::sample_surface(s.sol, &s.w, s.fx.domain, 8, 8);
  const fs::path p = tmp.path() / "surface.obj";
  mesh::write_obj(m, p);
  const auto ls = lines(p);
  ASSERT_FALSE(ls.empty());
  EXPECT_EQ(ls[0].rfind('#', 0), 0u);
  EXPECT_NE(ls[0].find("x3"), std::string::npos);
  EXPECT_NE(ls[0].find("timelike"), std::string::npos);
  std::size_t first_f = ls.size();
  std::size_t last_v = 0;
  int min_index = 1 << 30;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (ls[i].rfind("v ", 0) == 0) last_v = i;
    if (ls[i].rfind("f ", 0) == 0) {
      first_f = std::min(first_f, i);
      std::istringstream is(ls[i].substr(2));
      for (int k; is >> k;) min_index = std::min(min_index, k);
    }
  }
  EXPECT_LT(last_v, first_f);
  EXPECT_EQ(min_index, 1);
}

TEST(Files, SidecarListsFlaggedVertices) {
  TempDir tmp;
  const auto s = solved(fixtures::lorentzian_catenoid());
  const auto m = mesh::sample_surface(s.sol, &s.w, s.fx.domain, 13, 12);
  const fs::path p = tmp.path() / "cat.obj";
  mesh::write_obj(m, p);
  EXPECT_EQ(mesh::sidecar_path(p), tmp.path() / "cat.sing");
  std::vector<int> listed;
  for (const auto& l : lines(tmp.path() / "cat.sing")) {
    if (l.empty() || l[0] == '#') continue;
    listed.push_back(std::stoi(l) - 1);
  }
  EXPECT_EQ(listed, m.singular_indices());
  EXPECT_EQ(listed.size(), 12u);
}

TEST(Files, EmptyMeshRefused) {
  TempDir tmp;
  EXPECT_THROW(mesh::write_obj(mesh::SurfaceMesh{}, tmp.path() / "x.obj"), IoError);
  EXPECT_FALSE(fs::exists(tmp.path() / "x.obj"));
}

TEST(Files, UnwritableDirectoryIsIoError) {
  const auto s = solved(fixtures::shrinking_segment());
  const auto m = mesh::sample_surface(s.sol, &s.w, s.fx.domain, 8, 8);
  EXPECT_THROW(mesh::write_obj(m, "/nonexistent_dir_maxface/x.obj"), IoError);
}

TEST(Files, CsvHasSeventeenDigits) {
  TempDir tmp;
  const auto s = solved(fixtures::perturbed_catenoid(3));
  const auto poly = mesh::singular_image_curve(s.sol, s.fx.data.curve, 64);
  const fs::path p = tmp.path() / "curve.csv";
  mesh::write_polyline_csv(poly, p);
  const auto ls = lines(p);
  ASSERT_EQ(ls.size(), poly.points.size() + 1);
  EXPECT_EQ(ls[0], "t,x,y,z");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    std::istringstream is(ls[i]);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(is, cell, ',')) vals.push_back(std::strtod(cell.c_str(), nullptr));
    ASSERT_EQ(vals.size(), 4u);
    // %.17g round-trips exactly.
    EXPECT_EQ(vals[0], poly.t[i - 1]);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(vals[k + 1], poly.points[i - 1][k]);
  }
}
