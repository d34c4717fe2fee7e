#pragma once

namespace kmx {

/// Selects between the OpenMP kernel and the serial reference loop. Both
/// produce identical, deterministically ordered results.
enum class Exec { Serial, Parallel };

/// Applies the KMX_THREADS environment cap (if set) to the OpenMP runtime.
/// Safe to call repeatedly.
void configure_threads_from_env();

/// Number of threads a parallel kernel will use.
int max_threads();

}  // namespace kmx
