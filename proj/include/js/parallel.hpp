#pragma once
#include <exception>
#include <type_traits>
#include <vector>

namespace js {

enum class Exec { Serial, Parallel };

/// Threads used by Exec::Parallel: set_threads value, else JS_THREADS, else the OpenMP default.
int thread_count();
void set_threads(int n);

/// Maps f over points. Results land by index, so the output never depends on the thread count.
/// An exception thrown at any point is rethrown after the loop.
template <class T, class F>
auto grid_map(const std::vector<T>& pts, F&& f, Exec exec = Exec::Parallel) {
  using R = std::decay_t<decltype(f(pts[0]))>;
  std::vector<R> out(pts.size());
  const long n = static_cast<long>(pts.size());
  if (exec == Exec::Serial || n < 2) {
    for (long i = 0; i < n; ++i) out[static_cast<size_t>(i)] = f(pts[static_cast<size_t>(i)]);
    return out;
  }
  std::exception_ptr err;
  const int nt = thread_count();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<size_t>(i)] = f(pts[static_cast<size_t>(i)]);
    } catch (...) {
#pragma omp critical(js_grid_map_error)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace js
