#pragma once

#include <functional>

namespace relight {

// Caps worker threads used by parallel_rows. 0 selects hardware concurrency.
void set_thread_limit(int threads);
int thread_limit();

// Runs body(row) for every row in [0, rows). Rows are split into contiguous
// blocks; each row must write only its own outputs, so results do not depend
// on the thread count.
void parallel_rows(int rows, const std::function<void(int)>& body);

}  // namespace relight
