#pragma once

namespace geodubins {

// Thread count for OpenMP kernels. GEODUBINS_THREADS caps it; unset means
// the OpenMP default.
int thread_count();

}  // namespace geodubins
