#pragma once

#include <cstddef>

namespace mcrec {

// Upper bound on worker threads used inside library calls. Defaults to the
// hardware concurrency; 1 disables forking.
void set_thread_limit(std::size_t n) noexcept;
std::size_t thread_limit() noexcept;

// Recursion depth to which balanced fork-join may spawn, given the limit.
std::size_t fork_depth() noexcept;

}  // namespace mcrec
