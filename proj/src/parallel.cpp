#include "mcrec/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace mcrec {

namespace {

std::atomic<std::size_t>& limit()
{
    static std::atomic<std::size_t> value{std::max(1u, std::thread::hardware_concurrency())};
    return value;
}

}  // namespace

void set_thread_limit(std::size_t n) noexcept { limit().store(std::max<std::size_t>(1, n)); }

std::size_t thread_limit() noexcept { return limit().load(); }

std::size_t fork_depth() noexcept
{
    std::size_t d = 0;
    while ((std::size_t{2} << d) <= thread_limit()) ++d;
    return d;
}

}  // namespace mcrec
