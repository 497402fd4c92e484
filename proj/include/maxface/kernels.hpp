#pragma once

// Grid kernels. Each parallel kernel has a serial twin with identical
// semantics; the serial one is the reference used by the tests and the
// benchmark baseline.

#include <omp.h>

#include <algorithm>
#include <complex>
#include <exception>
#include <span>
#include <vector>

namespace maxface::kernels {

/// Thread cap: MAXFACE_THREADS if set to a positive integer, else the OpenMP
/// default.
int max_threads();

/// Overrides the cap for the current process (0 restores the env/default).
void set_max_threads(int n);

namespace detail {

// Exceptions must not escape an OpenMP region; the first one is kept and
// rethrown after the join.
class ErrorSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#pragma omp critical(maxface_error_slot)
      {
        if (!error_) error_ = std::current_exception();
      }
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace detail

template <class Point, class F>
double grid_max_serial(std::span<const Point> pts, F&& f) {
  double m = 0.0;
  for (const auto& p : pts) m = std::max(m, static_cast<double>(f(p)));
  return m;
}

template <class Point, class F>
double grid_max_parallel(std::span<const Point> pts, F&& f) {
  double m = 0.0;
  detail::ErrorSlot slot;
  const auto n = static_cast<long>(pts.size());
#pragma omp parallel for reduction(max : m) num_threads(max_threads()) schedule(static)
  for (long i = 0; i < n; ++i) {
    slot.run([&] { m = std::max(m, static_cast<double>(f(pts[i]))); });
  }
  slot.rethrow();
  return m;
}

template <class Point, class F>
double grid_max_serial(const std::vector<Point>& pts, F&& f) {
  return grid_max_serial(std::span<const Point>(pts), std::forward<F>(f));
}

template <class Point, class F>
double grid_max_parallel(const std::vector<Point>& pts, F&& f) {
  return grid_max_parallel(std::span<const Point>(pts), std::forward<F>(f));
}

/// out[i] = f(pts[i]).
template <class Point, class Out, class F>
void grid_map_serial(std::span<const Point> pts, std::span<Out> out, F&& f) {
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f(pts[i]);
}

template <class Point, class Out, class F>
void grid_map_parallel(std::span<const Point> pts, std::span<Out> out, F&& f) {
  detail::ErrorSlot slot;
  const auto n = static_cast<long>(pts.size());
#pragma omp parallel for num_threads(max_threads()) schedule(static)
  for (long i = 0; i < n; ++i) {
    slot.run([&] { out[i] = f(pts[i]); });
  }
  slot.rethrow();
}

}  // namespace maxface::kernels
