#include "maxface/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxface/config.hpp"
#include "maxface/errors.hpp"
#include "maxface/mesh_export.hpp"

namespace maxface::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::optional<std::string> out_dir;
  std::optional<int> n_min;
  std::optional<int> n_max;
  std::optional<std::string> grid;
  std::optional<double> tol_root;
  std::optional<double> tol_nonzero;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Job config with command-line overrides applied.
struct Job {
  JobConfig cfg;
  fs::path out_dir;
  bool out_given = false;
  bool grid_given = false;
  int grid_u = 0;
  int grid_v = 0;
};

Job resolve(const Options& o) {
  Job job{load_config(o.config), {}, false, false, 0, 0};
  JobConfig& c = job.cfg;
  if (o.n_min) c.n_min = *o.n_min;
  if (o.n_max) c.n_max = *o.n_max;
  if (c.n_min < 1 || c.n_max < c.n_min) throw UsageError("need 1 <= n-min <= n-max");
  if (o.tol_root) c.tol.root = *o.tol_root;
  if (o.tol_nonzero) c.tol.nonzero = *o.tol_nonzero;
  if (!(c.tol.root > 0.0) || !(c.tol.nonzero > 0.0)) throw UsageError("tolerances must be positive");
  if (o.grid) {
    int u = 0;
    int v = 0;
    char tail = 0;
    if (std::sscanf(o.grid->c_str(), "%dx%d%c", &u, &v, &tail) != 2 || u < 2 || v < 2) {
      throw UsageError("--grid expects UxV with U, V >= 2, got '" + *o.grid + "'");
    }
    job.grid_given = true;
    job.grid_u = u;
    job.grid_v = v;
  }
  job.out_given = o.out_dir.has_value();
  job.out_dir = o.out_dir ? fs::path(*o.out_dir) : fs::path(c.output_dir);
  return job;
}

json tolerances_json(const Tolerances& t) {
  return {{"root", t.root},
          {"nonzero", t.nonzero},
          {"grid", kGridTol},
          {"identity", kIdentityTol},
          {"period", kPeriodTol},
          {"singular_flag", mesh::kSingularFlagTol}};
}

json header(const std::string& command, const Job& job) {
  return {{"command", command},
          {"config", job.cfg.name},
          {"config_hash", hex64(job.cfg.hash)},
          {"tolerances", tolerances_json(job.cfg.tol)}};
}

json vec_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json validation_json(const ValidationReport& rep) {
  json conds = json::array();
  for (const auto& c : rep.conditions) {
    conds.push_back({{"name", c.name},
                     {"applicable", c.applicable},
                     {"passed", c.passed},
                     {"measure", c.measure},
                     {"detail", c.detail}});
  }
  return {{"passed", rep.passed()}, {"conditions", conds}};
}

json sup_json(const SupNorm& s) {
  return {{"grid_estimate", s.grid_estimate}, {"coefficient_bound", s.coefficient_bound}};
}

json entry_json(const SingularPointReport::Entry& e) {
  const auto& d = e.diagnostics;
  return {{"t", e.t},
          {"kind", to_string(e.kind)},
          {"sign_change", e.sign_change},
          {"re_A", d.re_A},
          {"im_A", d.im_A},
          {"A_source", d.a_from_weierstrass ? "weierstrass" : "case_formula"},
          {"s", d.s},
          {"H", d.H},
          {"H_prime", d.H_prime},
          {"D_alpha", d.D_alpha},
          {"D_beta", d.D_beta},
          {"branch", to_string(d.branch)}};
}

json singular_points_json(const SingularPointReport& rep) {
  json entries = json::array();
  for (const auto& e : rep.entries) entries.push_back(entry_json(e));
  return {{"s_identically_zero", rep.s_identically_zero},
          {"swallowtail_count", rep.swallowtail_parameters.size()},
          {"swallowtail_parameters", rep.swallowtail_parameters},
          {"entries", entries}};
}

void emit(const json& report, const std::string& file, const Job& job, bool always_write,
          std::ostream& out) {
  const std::string text = report.dump(2);
  out << text << '\n';
  if (always_write || job.out_given) {
    fs::create_directories(job.out_dir);
    std::ofstream os(job.out_dir / file);
    if (!os) throw IoError("cannot write " + (job.out_dir / file).string());
    os << text << '\n';
    if (!os) throw IoError("write failed: " + (job.out_dir / file).string());
  }
}

// Prints the failing validation conditions and returns the math-failure code.
int reject_invalid(const ValidationReport& v, std::ostream& err) {
  err << "error: Björling data fails:";
  for (const auto& c : v.conditions) {
    if (c.applicable && !c.passed) err << ' ' << c.name;
  }
  err << '\n';
  return kExitMath;
}

int cmd_validate(const Job& job, std::ostream& out, std::ostream& err) {
  const auto v = validate(job.cfg.data);
  json rep = header("validate", job);
  rep["validation"] = validation_json(v);
  if (!job.cfg.data.curve.is_general() && v.passed()) {
    const auto pr = check_periods(build_phi(job.cfg.data), job.cfg.domain);
    rep["periods"] = {{"passed", pr.passed},
                      {"imag_residues", pr.imag_residues},
                      {"simply_connected", pr.simply_connected}};
  }
  emit(rep, "validate_report.json", job, false, out);
  if (!v.passed()) return reject_invalid(v, err);
  return kExitOk;
}

int cmd_classify(const Job& job, std::ostream& out, std::ostream& err) {
  const JobConfig& c = job.cfg;
  const auto v = validate(c.data);
  if (!v.passed()) return reject_invalid(v, err);
  std::optional<WeierstrassData> w;
  if (!c.data.curve.is_general()) w = weierstrass_from_phi(build_phi(c.data));
  const auto points = find_swallowtails(c.data, w ? &*w : nullptr, c.resolution, c.tol);
  const auto shr = check_shrinking(c.data, kValidationGrid, c.tol);

  json rep = header("classify", job);
  rep["curve"] = c.data.curve.name();
  rep["resolution"] = c.resolution;
  rep["singular_points"] = singular_points_json(points);
  rep["shrinking"] = shr.shrinking;
  rep["shrinking_detail"] = {{"s_vanishes", shr.s_vanishes},
                             {"s_max_coeff", shr.s_max_coeff},
                             {"segment_alpha_constant", shr.segment_alpha_constant},
                             {"d_nonzero", shr.d_nonzero},
                             {"min_normalized_d", shr.min_normalized_d},
                             {"failing_samples", shr.failing_samples}};
  bool conelike = false;
  if (shr.shrinking && !c.data.curve.is_general()) {
    try {
      const auto sol = solve(c.data, c.domain, c.t0);
      const auto cl = check_generalized_conelike(c.data, sol, c.t0);
      conelike = cl.conelike;
      rep["image_point"] = vec_json(cl.image_point);
      rep["image_max_deviation"] = cl.max_deviation;
    } catch (const PeriodError& e) {
      rep["conelike_detail"] = e.what();
    }
  }
  rep["generalized_conelike"] = conelike;
  emit(rep, "classify_report.json", job, false, out);
  return kExitOk;
}

std::string numbered(const std::string& stem, int n, const std::string& ext) {
  return stem + "_n" + std::to_string(n) + ext;
}

int cmd_sequence(const Job& job, std::ostream& out, std::ostream& err) {
  const JobConfig& c = job.cfg;
  const auto v = validate(c.data);
  if (!v.passed()) return reject_invalid(v, err);
  const auto shr = check_shrinking(c.data, kValidationGrid, c.tol);
  if (!shr.shrinking) {
    err << "error: invalid base: data is not shrinking (s max coeff " << shr.s_max_coeff
        << ", failing D samples " << shr.failing_samples << ")\n";
    return kExitMath;
  }
  if (!c.family) throw UsageError("sequence needs a 'family' entry in the config");
  const auto sol = solve(c.data, c.domain, c.t0);
  ConvergenceOptions opt;
  opt.n_min = c.n_min;
  opt.n_max = c.n_max;
  opt.n_u = job.grid_given ? job.grid_u : c.grid_u;
  opt.n_v = job.grid_given ? job.grid_v : c.grid_v;
  opt.census_resolution = c.resolution;
  opt.tol = c.tol;
  const auto conv = convergence_report(sol, *c.family, c.data, c.domain, opt);

  fs::create_directories(job.out_dir);
  json rows = json::array();
  for (const auto& r : conv.rows) {
    const DeformedData dd = deform(c.data, *c.family, r.n);
    const auto sol_n = solve_phi(*dd.psi, c.domain, sol.basepoint, true);
    const auto w_n = weierstrass_from_phi(*dd.psi);
    const auto m = mesh::sample_surface(sol_n, &w_n, c.domain, c.mesh_u, c.mesh_v);
    const std::string obj = numbered("surface", r.n, ".obj");
    mesh::write_obj(m, job.out_dir / obj);
    json row = {{"n", r.n},
                {"a_n", r.a_n},
                {"swallowtail_count", r.swallowtail_count},
                {"expected_count", r.expected_count},
                {"shortfall", r.shortfall},
                {"g_n_norm", sup_json(r.g_n_norm)},
                {"path_bound_L", r.path_bound_L},
                {"certified_bound", r.certified_bound},
                {"measured_sup_diff", r.measured_sup_diff},
                {"within_bound", r.measured_sup_diff <= r.certified_bound + 1e-8},
                {"period_closed", r.period_closed},
                {"mesh", obj}};
    if (r.segment_bound) row["segment_bound"] = *r.segment_bound;
    rows.push_back(row);
  }
  json rep = header("sequence", job);
  rep["family"] = c.family->name();
  rep["domain"] = describe(c.domain);
  rep["grid"] = {opt.n_u, opt.n_v};
  rep["L"] = conv.L;
  rep["rows"] = rows;
  rep["within_bounds"] = conv.within_bounds;
  rep["bounds_decreasing"] = conv.bounds_decreasing;
  rep["measured_decreasing"] = conv.measured_decreasing;
  emit(rep, "sequence_report.json", job, true, out);
  if (!conv.within_bounds) {
    err << "error: measured sup difference exceeds the certified bound\n";
    return kExitMath;
  }
  return kExitOk;
}

json write_surface(const MaxfaceSolution& sol, const WeierstrassData& w, const BjorlingData& data,
                   const Job& job, int mesh_u, int mesh_v, const std::string& obj,
                   const std::string& csv, const std::vector<double>& marked) {
  const auto m = mesh::sample_surface(sol, &w, job.cfg.domain, mesh_u, mesh_v);
  mesh::write_obj(m, job.out_dir / obj);
  const auto poly = mesh::singular_image_curve(sol, data.curve, kValidationGrid, marked);
  mesh::write_polyline_csv(poly, job.out_dir / csv);
  json marks = json::array();
  for (int i : poly.marked) marks.push_back({{"t", poly.t[i]}, {"x", vec_json(poly.points[i])}});
  json rep = {{"obj", obj},
              {"sing", mesh::sidecar_path(obj).string()},
              {"csv", csv},
              {"vertices", m.vertices.size()},
              {"faces", m.faces.size()},
              {"singular_vertices", m.singular_indices().size()},
              {"cone_point", poly.cone_point},
              {"marked", marks},
              {"period_closed", sol.single_valued}};
  if (poly.cone_point) rep["cone_point_position"] = vec_json(poly.points.front());
  return rep;
}

int cmd_mesh(const Job& job, const Options& o, std::ostream& out, std::ostream& err) {
  const JobConfig& c = job.cfg;
  const auto v = validate(c.data);
  if (!v.passed()) return reject_invalid(v, err);
  const PhiForm phi = build_phi(c.data);
  const auto sol = solve(c.data, c.domain, c.t0);
  const auto w = weierstrass_from_phi(phi);
  const int mu = job.grid_given ? job.grid_u : c.mesh_u;
  const int mv = job.grid_given ? job.grid_v : c.mesh_v;
  if (mu < mesh::kMinGrid || mv < mesh::kMinGrid) throw UsageError("mesh grid must be at least 8x8");

  std::vector<int> ns = c.mesh_n;
  if (o.n_min || o.n_max) {
    ns.clear();
    for (int n = c.n_min; n <= c.n_max; ++n) ns.push_back(n);
  }
  if (!ns.empty() && !c.family) throw UsageError("per-n meshes need a 'family' entry in the config");

  fs::create_directories(job.out_dir);
  const auto base_points = find_swallowtails(c.data, &w, c.resolution, c.tol);
  json rep = header("mesh", job);
  rep["grid"] = {mu, mv};
  rep["base"] = write_surface(sol, w, c.data, job, mu, mv, "surface.obj", "singular_curve.csv",
                              base_points.swallowtail_parameters);
  json per_n = json::array();
  for (int n : ns) {
    const DeformedData dd = deform(c.data, *c.family, n);
    if (!dd.validation.passed()) return reject_invalid(dd.validation, err);
    const auto sol_n = solve_phi(*dd.psi, c.domain, sol.basepoint, true);
    const auto w_n = weierstrass_from_phi(*dd.psi);
    const auto census = swallowtail_census(dd, &w_n, c.resolution, c.tol);
    json item = write_surface(sol_n, w_n, dd.data, job, mu, mv, numbered("surface", n, ".obj"),
                              numbered("singular_curve", n, ".csv"),
                              census.report.swallowtail_parameters);
    item["n"] = n;
    item["swallowtail_count"] = census.count;
    per_n.push_back(item);
  }
  rep["deformed"] = per_n;
  emit(rep, "mesh_report.json", job, true, out);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Singular Björling problem for maxfaces: validate, classify, sequence, mesh"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON job configuration")->required();
    sub->add_option("--out", o.out_dir, "output directory (created if missing)");
    sub->add_option("--n-min", o.n_min, "first n of the deformation sequence");
    sub->add_option("--n-max", o.n_max, "last n of the deformation sequence");
    sub->add_option("--grid", o.grid, "sampling grid UxV");
    sub->add_option("--tol-root", o.tol_root, "|s| below this is a root");
    sub->add_option("--tol-nonzero", o.tol_nonzero, "H', Re A and D above this are nonzero");
  };
  auto* v = app.add_subcommand("validate", "check the Björling data conditions");
  auto* c = app.add_subcommand("classify", "locate swallowtails and test shrinking / cone-like");
  auto* s = app.add_subcommand("sequence", "deform by a scaling family and certify convergence");
  auto* m = app.add_subcommand("mesh", "write OBJ surfaces and singular-curve CSVs");
  for (auto* sub : {v, c, s, m}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Job job = resolve(o);
    if (v->parsed()) return cmd_validate(job, out, err);
    if (c->parsed()) return cmd_classify(job, out, err);
    if (s->parsed()) return cmd_sequence(job, out, err);
    return cmd_mesh(job, o, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitMath;
  }
}

}  // namespace maxface::cli
