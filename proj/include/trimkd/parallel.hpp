#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace trimkd {

// workers == 1 runs the plain serial reference loop; 0 uses every
// hardware thread; k > 1 pins the team size. Loop bodies index
// preallocated output slots and derive their own random streams, so the
// result is identical for every setting.
struct ExecPolicy {
    int workers = 0;
};

template <class Fn>
void parallel_for_index(std::int64_t count, const ExecPolicy& policy, Fn&& fn) {
    if (count <= 0) return;
    if (policy.workers == 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
    if (policy.workers <= 0) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; ++i) fn(i);
    } else {
#pragma omp parallel for schedule(static) num_threads(policy.workers)
        for (std::int64_t i = 0; i < count; ++i) fn(i);
    }
#else
    for (std::int64_t i = 0; i < count; ++i) fn(i);
#endif
}

}  // namespace trimkd
