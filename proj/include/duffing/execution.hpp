#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace duffing {

// Every data-parallel kernel in the library takes an Execution argument.  The
// serial path is the reference implementation the parallel path is tested
// against; both write results by index so the output order is identical.
enum class Execution { serial, parallel };

template <class Fn>
void for_each_index(std::size_t n, Execution exec, Fn&& fn) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

// Sets the OpenMP team size; n == 0 keeps the runtime default.
void set_thread_count(int n);
int thread_count();

}  // namespace duffing
