#include "hk/parallel.hpp"

#include <atomic>

namespace hk::par {

namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int nthreads) { g_max_threads.store(nthreads); }
int max_threads() { return g_max_threads.load(); }

}  // namespace hk::par
