#pragma once

#include <exception>

#ifdef HK_HAVE_OPENMP
#include <omp.h>
#endif

namespace hk::par {

// 0 = library default (OpenMP's choice), 1 = serial.
void set_max_threads(int nthreads);
int max_threads();

// Parallel loop over [0, n). Each index writes only its own outputs, so the
// result is bit-identical to the serial loop regardless of thread count.
template <class F>
void for_index(long n, F&& f) {
#ifdef HK_HAVE_OPENMP
    if (max_threads() != 1 && n > 1) {
        std::exception_ptr err;
        const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt > 0 ? nt : omp_get_max_threads())
        for (long i = 0; i < n; ++i) {
            try {
                f(i);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#endif
    for (long i = 0; i < n; ++i) f(i);
}

// Serial reference loop, kept for the benchmark comparison and for tests that
// pin down bit-identical parallel/serial behaviour.
template <class F>
void for_index_serial(long n, F&& f) {
    for (long i = 0; i < n; ++i) f(i);
}

}  // namespace hk::par
