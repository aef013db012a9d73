#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace peterlin {

/// Sets the worker count for cell-parallel loops. Results are bitwise
/// independent of this setting: parallel regions only ever write disjoint
/// per-cell slots, and every reduction is performed serially in fixed
/// cell order afterwards.
inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

template <class F>
inline void parallel_for(long n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long i = 0; i < n; ++i) body(i);
}

}  // namespace peterlin
