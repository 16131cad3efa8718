#pragma once

#include <cstddef>
#include <functional>
#include <optional>

namespace nlevolve {

/// Run body(i) for i in [0, count) on up to `threads` threads.  Indices are
/// dealt round-robin; if several bodies throw, the exception of the
/// smallest index is rethrown so failures are reproducible.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

/// Explicit value if given, otherwise NONLOCAL_EVOLVE_THREADS, otherwise 1.
unsigned resolve_threads(std::optional<unsigned> requested);

}  // namespace nlevolve
