#include "maxface/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace maxface {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::map<int, double> harmonic_map(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object of harmonic -> coefficient");
  std::map<int, double> out;
  for (const auto& [k, v] : j.items()) {
    int idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoi(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      fail(where, "harmonic index '" + k + "' is not an integer");
    }
    if (idx < 1) fail(where, "harmonic index must be >= 1");
    out[idx] += number(v, where + "." + k);
  }
  return out;
}

ParamFunction parse_function(const json& j, const std::string& where) {
  if (j.is_number()) return RealPoly::constant(j.get<double>());
  if (!j.is_object() || j.size() == 0) fail(where, "expected a function spec");
  if (j.contains("trig")) {
    const json& t = j.at("trig");
    if (!t.is_object()) fail(where, "trig spec must be an object");
    for (const auto& [k, v] : t.items()) {
      (void)v;
      if (k != "const" && k != "cos" && k != "sin") fail(where, "unknown trig key '" + k + "'");
    }
    const double c = t.contains("const") ? number(t.at("const"), where + ".const") : 0.0;
    auto cs = t.contains("cos") ? harmonic_map(t.at("cos"), where + ".cos") : std::map<int, double>{};
    auto sn = t.contains("sin") ? harmonic_map(t.at("sin"), where + ".sin") : std::map<int, double>{};
    return TrigPoly(c, std::move(cs), std::move(sn));
  }
  if (j.contains("poly")) {
    const json& p = j.at("poly");
    if (!p.is_array() || p.empty()) fail(where, "poly must be a nonempty coefficient list");
    std::vector<double> c;
    for (std::size_t i = 0; i < p.size(); ++i) c.push_back(number(p[i], where + ".poly"));
    return RealPoly(std::move(c));
  }
  auto list = [&](const char* key) {
    const json& a = j.at(key);
    if (!a.is_array() || a.empty()) fail(where, std::string(key) + " must be a nonempty list");
    std::vector<ParamFunction> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      out.push_back(parse_function(a[i], where + "." + key + "[" + std::to_string(i) + "]"));
    }
    return out;
  };
  try {
    if (j.contains("sum")) {
      auto fs = list("sum");
      ParamFunction acc = fs[0];
      for (std::size_t i = 1; i < fs.size(); ++i) acc = acc + fs[i];
      return acc;
    }
    if (j.contains("product")) {
      auto fs = list("product");
      ParamFunction acc = fs[0];
      for (std::size_t i = 1; i < fs.size(); ++i) acc = acc * fs[i];
      return acc;
    }
    if (j.contains("scale")) {
      return number(j.at("scale"), where + ".scale") * parse_function(need(j, "of", where), where + ".of");
    }
  } catch (const std::logic_error& e) {
    fail(where, e.what());
  }
  fail(where, "function spec needs one of trig, poly, sum, product, scale");
}

Vec3Field parse_field(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) fail(where, "expected a list of three components");
  return {{parse_function(j[0], where + "[0]"), parse_function(j[1], where + "[1]"),
           parse_function(j[2], where + "[2]")}};
}

SingularCurve parse_curve(const json& j) {
  const std::string where = "curve";
  const std::string kind = need(j, "kind", where).get<std::string>();
  try {
    if (kind == "unit_circle") return UnitCircle{};
    if (kind == "segment") {
      return Segment{number(need(j, "a", where), "curve.a"), number(need(j, "b", where), "curve.b")};
    }
    if (kind == "general") {
      GeneralAnalytic g;
      g.lambda1 = parse_function(need(j, "lambda1", where), "curve.lambda1");
      g.lambda2 = parse_function(need(j, "lambda2", where), "curve.lambda2");
      g.t_min = number(need(j, "t_min", where), "curve.t_min");
      g.t_max = number(need(j, "t_max", where), "curve.t_max");
      g.periodic = j.value("periodic", false);
      return g;
    }
  } catch (const std::logic_error& e) {
    fail(where, e.what());
  }
  fail(where, "unknown curve kind '" + kind + "'");
}

Domain parse_domain(const json& j) {
  const std::string where = "domain";
  const std::string kind = need(j, "kind", where).get<std::string>();
  Domain d;
  if (kind == "annulus") {
    d = Annulus{number(need(j, "r_in", where), "domain.r_in"), number(need(j, "r_out", where), "domain.r_out")};
  } else if (kind == "rectangle") {
    d = Rectangle{number(need(j, "u_min", where), "domain.u_min"), number(need(j, "u_max", where), "domain.u_max"),
                  number(need(j, "v_min", where), "domain.v_min"), number(need(j, "v_max", where), "domain.v_max")};
  } else {
    fail(where, "unknown domain kind '" + kind + "'");
  }
  try {
    check_domain(d);
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
  return d;
}

ScalingFamily parse_family(const json& j) {
  const std::string where = "family";
  const std::string kind = need(j, "kind", where).get<std::string>();
  if (kind == "circle") return CircleFamily{};
  if (kind == "segment") {
    const double r = number(need(j, "r", where), "family.r");
    if (!(r > 0.0)) fail(where, "segment family needs r > 0");
    return SegmentFamily{r};
  }
  if (kind == "custom") {
    const json& ms = need(j, "members", where);
    if (!ms.is_array() || ms.empty()) fail(where, "custom family needs a nonempty members list");
    CustomFamily c;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const std::string w = "family.members[" + std::to_string(i) + "]";
      ScalingMember m;
      m.n = integer(need(ms[i], "n", w), w + ".n");
      m.f = parse_function(need(ms[i], "f", w), w + ".f");
      const json& zs = need(ms[i], "zeros", w);
      if (!zs.is_array()) fail(w, "zeros must be a list");
      for (const auto& z : zs) m.zeros.push_back(number(z, w + ".zeros"));
      m.a_n = static_cast<int>(m.zeros.size()) - 1;
      c.members[m.n] = m;
    }
    return c;
  }
  fail(where, "unknown family kind '" + kind + "'");
}

void parse_pair(const json& j, const std::string& where, int& u, int& v) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [U, V]");
  u = integer(j[0], where);
  v = integer(j[1], where);
  if (u < 2 || v < 2) fail(where, "grid sizes must be >= 2");
}

}  // namespace

JobConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  JobConfig cfg;
  try {
    cfg.hash = fnv1a64(j.dump());
    cfg.name = j.value("name", std::string("job"));
    cfg.data = BjorlingData{parse_curve(need(j, "curve", "config")),
                            parse_field(need(j, "alpha_prime", "config"), "alpha_prime"),
                            parse_field(need(j, "beta", "config"), "beta")};
    cfg.domain = parse_domain(need(j, "domain", "config"));
    if (j.contains("t0")) cfg.t0 = number(j.at("t0"), "t0");
    if (j.contains("family")) cfg.family = parse_family(j.at("family"));
    if (j.contains("n_range")) {
      const json& r = j.at("n_range");
      if (!r.is_array() || r.size() != 2) fail("n_range", "expected [n_min, n_max]");
      cfg.n_min = integer(r[0], "n_range");
      cfg.n_max = integer(r[1], "n_range");
    }
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) fail("n_range", "need 1 <= n_min <= n_max");
    if (j.contains("grid")) parse_pair(j.at("grid"), "grid", cfg.grid_u, cfg.grid_v);
    if (j.contains("mesh_grid")) parse_pair(j.at("mesh_grid"), "mesh_grid", cfg.mesh_u, cfg.mesh_v);
    if (j.contains("resolution")) cfg.resolution = integer(j.at("resolution"), "resolution");
    if (cfg.resolution < kMinResolution) fail("resolution", "must be >= " + std::to_string(kMinResolution));
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      if (t.contains("root")) cfg.tol.root = number(t.at("root"), "tolerances.root");
      if (t.contains("nonzero")) cfg.tol.nonzero = number(t.at("nonzero"), "tolerances.nonzero");
    }
    if (!(cfg.tol.root > 0.0) || !(cfg.tol.nonzero > 0.0)) fail("tolerances", "must be positive");
    if (j.contains("mesh_n")) {
      const json& m = j.at("mesh_n");
      if (!m.is_array()) fail("mesh_n", "expected a list of integers");
      for (const auto& v : m) {
        const int n = integer(v, "mesh_n");
        if (n < 1) fail("mesh_n", "entries must be >= 1");
        cfg.mesh_n.push_back(n);
      }
    }
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
  return cfg;
}

JobConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

}  // namespace maxface
