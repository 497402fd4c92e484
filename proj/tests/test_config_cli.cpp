#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxface/cli.hpp"
#include "maxface/config.hpp"
#include "maxface/fixtures.hpp"

using namespace maxface;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kConfigDir = MAXFACE_CONFIG_DIR;

fs::path config(const std::string& name) { return kConfigDir / (name + ".json"); }

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("maxface_cli_") + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "maxface");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

double phi_distance(const PhiForm& a, const PhiForm& b) {
  double d = 0.0;
  for (int k = 0; k < 3; ++k) d = std::max(d, coefficient_distance(a[k], b[k]));
  return d;
}

std::string read_file(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

const char* kMinimal = R"({
  "curve": {"kind": "unit_circle"},
  "alpha_prime": [{"trig": {"cos": {"1": 1}}}, {"trig": {"sin": {"1": 1}}}, 1],
  "beta": [0, 0, 0],
  "domain": {"kind": "annulus", "r_in": 0.5, "r_out": 2}
})";

}  // namespace

// ============================================
// Config parsing
// ============================================

TEST(Config, ShippedConfigsMatchFixtures) {
  for (const auto& fx : fixtures::all()) {
    const auto c = load_config(config(fx.name));
    EXPECT_LT(phi_distance(build_phi(c.data), build_phi(fx.data)), 1e-15) << fx.name;
    EXPECT_EQ(c.data.curve.name(), fx.data.curve.name()) << fx.name;
    EXPECT_EQ(describe(c.domain), describe(fx.domain)) << fx.name;
    EXPECT_DOUBLE_EQ(c.t0, fx.t0) << fx.name;
    EXPECT_EQ(c.family.has_value(), fx.family.has_value()) << fx.name;
    if (c.family && fx.family) {
      EXPECT_EQ(c.family->name(), fx.family->name());
      EXPECT_EQ(c.n_min, fx.n_min);
      EXPECT_EQ(c.n_max, fx.n_max);
    }
  }
}

TEST(Config, MinimalDefaults) {
  const auto c = parse_config(kMinimal);
  EXPECT_EQ(c.name, "job");
  EXPECT_EQ(c.grid_u, 256);
  EXPECT_DOUBLE_EQ(c.tol.root, 1e-12);
  EXPECT_DOUBLE_EQ(c.tol.nonzero, 1e-8);
  EXPECT_FALSE(c.family);
  EXPECT_LT(phi_distance(build_phi(c.data), build_phi(fixtures::circle_null_curve().data)), 1e-15);
}

TEST(Config, FunctionCombinators) {
  json j = json::parse(kMinimal);
  // (2 cos t)(0.5) + 0 written with every combinator.
  j["alpha_prime"][0] = {{"sum", {{{"product", {{{"scale", 2.0}, {"of", {{"trig", {{"cos", {{"1", 1.0}}}}}}}}, 0.5}}},
                                  {{"poly", {0.0}}}}}};
  const auto c = parse_config(j.dump());
  for (double t : {0.0, 0.7, 2.0}) EXPECT_NEAR(c.data.alpha_prime(t)[0], std::cos(t), 1e-15);
}

TEST(Config, HashIgnoresKeyOrderAndWhitespace) {
  json a = json::parse(kMinimal);
  const std::string compact = a.dump();
  const std::string pretty = a.dump(4);
  EXPECT_EQ(parse_config(compact).hash, parse_config(pretty).hash);
  a["t0"] = 0.5;
  EXPECT_NE(parse_config(a.dump()).hash, parse_config(compact).hash);
  EXPECT_EQ(hex64(fnv1a64("")), "cbf29ce484222325");
  EXPECT_EQ(hex64(fnv1a64("a")), "af63dc4c8601ec8c");
}

TEST(Config, MalformedInputsRejected) {
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config("[]"), ConfigError);
  for (const char* key : {"curve", "alpha_prime", "beta", "domain"}) {
    json j = json::parse(kMinimal);
    j.erase(key);
    EXPECT_THROW(parse_config(j.dump()), ConfigError) << key;
  }
  json j = json::parse(kMinimal);
  j["curve"]["kind"] = "spiral";
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
  j = json::parse(kMinimal);
  j["alpha_prime"][0] = {{"bessel", 1}};
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
  j = json::parse(kMinimal);
  j["alpha_prime"].erase(2);
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
  j = json::parse(kMinimal);
  j["domain"] = {{"kind", "annulus"}, {"r_in", 2.0}, {"r_out", 1.0}};
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
  j = json::parse(kMinimal);
  j["n_range"] = {5, 2};
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
  j = json::parse(kMinimal);
  j["tolerances"] = {{"root", -1.0}};
  EXPECT_THROW(parse_config(j.dump()), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/maxface.json"), ConfigError);
}

// ============================================
// CLI exit codes
// ============================================

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"validate"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"validate", "--config", "/nonexistent.json"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"classify", "--config", config("lorentzian_catenoid"), "--grid", "8by8"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run_cli({"classify", "--config", config("lorentzian_catenoid"), "--grid", "1x8"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
}

TEST(Cli, ValidateAndClassifySucceed) {
  for (const auto& name : {"circle_null_curve", "lorentzian_catenoid", "shrinking_segment",
                           "perturbed_catenoid", "catenoid_circle_deformation"}) {
    const auto v = run_cli({"validate", "--config", config(name)});
    EXPECT_EQ(v.code, cli::kExitOk) << name << v.err;
    const auto c = run_cli({"classify", "--config", config(name)});
    EXPECT_EQ(c.code, cli::kExitOk) << name << c.err;
  }
}

TEST(Cli, ClassifyReportContents) {
  const auto r = run_cli({"classify", "--config", config("lorentzian_catenoid")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "classify");
  EXPECT_EQ(j["config_hash"], hex64(load_config(config("lorentzian_catenoid")).hash));
  EXPECT_DOUBLE_EQ(j["tolerances"]["root"].get<double>(), 1e-12);
  EXPECT_TRUE(j["shrinking"].get<bool>());
  EXPECT_TRUE(j["generalized_conelike"].get<bool>());
}

TEST(Cli, ToleranceFlagsAreEmbedded) {
  const auto r = run_cli({"classify", "--config", config("circle_null_curve"), "--tol-root", "1e-10",
                          "--tol-nonzero", "1e-6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["tolerances"]["root"].get<double>(), 1e-10);
  EXPECT_DOUBLE_EQ(j["tolerances"]["nonzero"].get<double>(), 1e-6);
}

TEST(Cli, ReportsAreDeterministic) {
  const std::vector<std::string> args{"classify", "--config", config("perturbed_catenoid")};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(Cli, SequenceWithoutFamilyIsUsageError) {
  TempDir tmp;
  const auto r = run_cli({"sequence", "--config", config("lorentzian_catenoid"), "--out", tmp.path()});
  EXPECT_EQ(r.code, cli::kExitUsage);
}

TEST(Cli, SequenceOnNonShrinkingBaseIsMathFailure) {
  TempDir tmp;
  const auto r = run_cli({"sequence", "--config", config("circle_null_curve"), "--out", tmp.path()});
  EXPECT_EQ(r.code, cli::kExitMath);
}

TEST(Cli, MeshOnOpenPeriodIsMathFailure) {
  TempDir tmp;
  const auto r = run_cli({"mesh", "--config", config("circle_null_curve"), "--out", tmp.path()});
  EXPECT_EQ(r.code, cli::kExitMath);
}

TEST(Cli, SequenceWritesReportAndMeshes) {
  TempDir tmp;
  const fs::path out = tmp.path() / "nested" / "dir";
  const auto r = run_cli({"sequence", "--config", config("catenoid_circle_deformation"), "--n-min", "2",
                          "--n-max", "4", "--grid", "32x32", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(fs::exists(out / "sequence_report.json"));
  const json j = json::parse(read_file(out / "sequence_report.json"));
  EXPECT_EQ(j, json::parse(r.out));
  EXPECT_EQ(j["rows"].size(), 3u);
  for (int n = 2; n <= 4; ++n) {
    EXPECT_TRUE(fs::exists(out / ("surface_n" + std::to_string(n) + ".obj"))) << n;
  }
  EXPECT_EQ(j["grid"], json::array({32, 32}));
}

TEST(Cli, MeshWritesFiles) {
  TempDir tmp;
  const auto r = run_cli({"mesh", "--config", config("shrinking_segment"), "--grid", "12x10", "--out",
                          tmp.path()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(tmp.path() / "surface.obj"));
  EXPECT_TRUE(fs::exists(tmp.path() / "surface.sing"));
  EXPECT_TRUE(fs::exists(tmp.path() / "singular_curve.csv"));
  EXPECT_TRUE(fs::exists(tmp.path() / "mesh_report.json"));
}

TEST(Cli, OutputDirectoryThatIsAFileIsUsageError) {
  TempDir tmp;
  const fs::path blocker = tmp.path() / "file";
  std::ofstream(blocker) << "x";
  const auto r = run_cli({"mesh", "--config", config("shrinking_segment"), "--out", blocker});
  EXPECT_EQ(r.code, cli::kExitUsage);
}
