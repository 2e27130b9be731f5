#pragma once

#include <cstdint>
#include <functional>

namespace shiftpow {

// SHIFTPOW_WORKERS environment variable if set, otherwise the hardware
// concurrency; always >= 1.
int default_workers();

// Splits [begin, end) into fixed-size chunks and hands them to a pool of
// `workers` threads via dynamic scheduling.  body(chunk_begin, chunk_end,
// chunk_index) may run on any thread; chunk_index is dense from 0, so callers
// slot per-chunk results and concatenate in index order for a merge that does
// not depend on the worker count.  The first exception thrown by any chunk is
// rethrown here.
void parallel_chunks(uint64_t begin, uint64_t end, uint64_t chunk_size,
                     int workers,
                     const std::function<void(uint64_t, uint64_t, size_t)>& body);

}  // namespace shiftpow
