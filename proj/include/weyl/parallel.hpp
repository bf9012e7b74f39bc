#pragma once

#include <cstddef>
#include <functional>

namespace weyl {

// Thread count used when a call passes 0.
unsigned default_threads();
void set_default_threads(unsigned n);

// Calls fn(i) for i in [0, n) over contiguous blocks. Each index is visited
// exactly once, so per-index outputs do not depend on the thread count.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace weyl
