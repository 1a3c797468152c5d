#pragma once

#include <functional>

namespace iago {

/// Runs fn(0) .. fn(n - 1) on up to `threads` workers. Tasks must write to
/// disjoint state; scheduling order is unspecified, so determinism has to
/// come from the tasks themselves.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace iago
