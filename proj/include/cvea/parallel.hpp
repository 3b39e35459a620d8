#pragma once

namespace cvea {

/// Caps the OpenMP team size used by the data-parallel sweeps. n <= 0 restores
/// the default (all available cores).
void set_thread_count(int n);
int thread_count();

}  // namespace cvea
