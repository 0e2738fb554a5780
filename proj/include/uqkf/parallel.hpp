#pragma once

#include <cstddef>
#include <functional>

namespace uqkf {

/// Number of worker threads used by parallel loops. Defaults to the
/// UQKF_THREADS environment variable, else hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Static-chunked parallel loop over [0, n). Each index is visited exactly
/// once; callers write per-index results and reduce serially afterwards, so
/// results never depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace uqkf
