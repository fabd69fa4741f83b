#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <vector>

#include "eam/summation.hpp"

namespace eam {

/// Exceptions must not escape an OpenMP region; loop bodies run through
/// `run` and the first captured exception is rethrown after the loop.
class ExceptionCollector {
 public:
  template <class F>
  void run(F&& body) noexcept {
    try {
      body();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex_);
      if (!first_) first_ = std::current_exception();
    }
  }

  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::exception_ptr first_;
  std::mutex mutex_;
};

/// Number of OpenMP threads in use (1 without OpenMP).
int worker_count();

/// Sum of term(k) for k in [0, count). Chunk boundaries are fixed, each chunk is
/// summed with compensation and the partials are combined in chunk order, so
/// the result does not depend on the thread count.
template <class Term>
double deterministic_sum(std::int64_t count, Term&& term, std::int64_t chunk = 4096) {
  const std::int64_t n_chunks = (count + chunk - 1) / chunk;
  std::vector<CompensatedSum> partial(static_cast<std::size_t>(n_chunks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    const std::int64_t end = std::min(count, (c + 1) * chunk);
    CompensatedSum acc;
    for (std::int64_t k = c * chunk; k < end; ++k) acc.add(term(k));
    partial[static_cast<std::size_t>(c)] = acc;
  }
  CompensatedSum total;
  for (const auto& p : partial) total.add(p);
  return total.value();
}

}  // namespace eam
