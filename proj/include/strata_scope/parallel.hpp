#pragma once

#include <cstddef>
#include <functional>

namespace strata_scope {

// Worker count: `requested` when positive, else STRATA_SCOPE_THREADS when
// set, else the hardware concurrency (at least 1).
unsigned resolve_thread_count(unsigned requested = 0);

// Calls body(i) for i in [0, count) on up to `threads` workers. Exceptions
// are rethrown on the caller (the one from the lowest index wins).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace strata_scope
