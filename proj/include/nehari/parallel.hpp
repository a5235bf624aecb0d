#pragma once

#include <cstddef>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nehari {

// Every data-parallel loop in the library goes through for_each_index.
// Exec::serial is the reference path the tests compare against; the
// parallel path must produce bit-identical results, so callers only write
// per-index outputs and never reduce inside the body.
enum class Exec { serial, parallel };

inline Exec default_exec() noexcept { return Exec::parallel; }

template <class Body>
void for_each_index(Exec exec, std::size_t count, Body&& body)
{
    if (exec == Exec::serial || count < 2) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        body(static_cast<std::size_t>(i));
}

inline int worker_count() noexcept
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace nehari
