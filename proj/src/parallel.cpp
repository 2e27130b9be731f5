#include "shiftpow/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shiftpow {

int default_workers() {
  if (const char* env = std::getenv("SHIFTPOW_WORKERS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw >= 1 ? static_cast<int>(hw) : 1;
}

void parallel_chunks(uint64_t begin, uint64_t end, uint64_t chunk_size,
                     int workers,
                     const std::function<void(uint64_t, uint64_t, size_t)>& body) {
  if (begin >= end) return;
  if (chunk_size == 0) chunk_size = 1;
  const uint64_t total = end - begin;
  const size_t nchunks = static_cast<size_t>((total + chunk_size - 1) / chunk_size);

  auto run_chunk = [&](size_t ci) {
    uint64_t lo = begin + ci * chunk_size;
    uint64_t hi = lo + chunk_size < end ? lo + chunk_size : end;
    body(lo, hi, ci);
  };

  if (workers <= 1 || nchunks <= 1) {
    for (size_t ci = 0; ci < nchunks; ++ci) run_chunk(ci);
    return;
  }

  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      size_t ci = next.fetch_add(1);
      if (ci >= nchunks) return;
      try {
        run_chunk(ci);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  size_t nthreads = std::min<size_t>(workers, nchunks);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace shiftpow
