#pragma once

#include <cstddef>

namespace centrank {

/// Worker count used by the OpenMP kernels. Defaults to the OpenMP runtime's
/// choice; 1 makes every reduction bitwise reproducible.
std::size_t thread_count();
void set_thread_count(std::size_t threads);

/// RAII override of the worker count.
class ScopedThreads {
 public:
  explicit ScopedThreads(std::size_t threads) : previous_(thread_count()) { set_thread_count(threads); }
  ~ScopedThreads() { set_thread_count(previous_); }
  ScopedThreads(const ScopedThreads&) = delete;
  ScopedThreads& operator=(const ScopedThreads&) = delete;

 private:
  std::size_t previous_;
};

}  // namespace centrank
