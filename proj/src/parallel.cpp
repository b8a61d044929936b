#include "js/parallel.hpp"

#include <omp.h>

#include <cstdlib>

namespace js {

namespace {
int g_threads = 0;
}

void set_threads(int n) { g_threads = n > 0 ? n : 0; }

int thread_count() {
  if (g_threads > 0) return g_threads;
  if (const char* env = std::getenv("JS_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

}  // namespace js
