#pragma once

// JSON job configuration.
//
// Component functions are written as
//   {"trig": {"const": a0, "cos": {"k": a_k}, "sin": {"k": b_k}}}
//   {"poly": [c0, c1, ...]}
//   {"sum": [F, ...]}, {"product": [F, ...]}, {"scale": s, "of": F}
// or a bare number (a constant).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxface/bjorling.hpp"
#include "maxface/sequences.hpp"
#include "maxface/singularities.hpp"

namespace maxface {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  std::string name = "job";
  BjorlingData data{Segment{}, {}, {}};
  Domain domain = Annulus{};
  double t0 = 0.0;
  std::optional<ScalingFamily> family;
  int n_min = 1;
  int n_max = 10;
  int grid_u = 256;
  int grid_v = 256;
  int mesh_u = 64;
  int mesh_v = 64;
  int resolution = kCensusResolution;
  Tolerances tol{};
  std::vector<int> mesh_n;
  std::string output_dir = "out";
  /// FNV-1a 64 of the canonical (sorted-key) JSON text.
  std::uint64_t hash = 0;
};

/// Throws ConfigError on malformed input.
JobConfig parse_config(const std::string& json_text);
JobConfig load_config(const std::filesystem::path& path);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace maxface
