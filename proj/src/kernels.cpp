#include "maxface/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace maxface::kernels {

namespace {

std::atomic<int> g_override{0};

int env_threads() {
  const char* v = std::getenv("MAXFACE_THREADS");
  if (v == nullptr) return 0;
  try {
    const int n = std::stoi(v);
    return n > 0 ? n : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace

int max_threads() {
  if (const int o = g_override.load(); o > 0) return o;
  static const int from_env = env_threads();
  if (from_env > 0) return std::min(from_env, omp_get_max_threads());
  return omp_get_max_threads();
}

void set_max_threads(int n) { g_override.store(n > 0 ? n : 0); }

}  // namespace maxface::kernels
