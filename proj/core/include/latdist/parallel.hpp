// Minimal deterministic parallel-for used by the hot loops.
//
// Contract: results never depend on the worker count. Callers only use
// this with per-index output slots (each index writes its own cell) or
// with associative integer reductions; floating-point reductions that
// need a fixed order are done serially by the caller instead.
#pragma once

#include <cstdint>
#include <functional>

namespace latdist {

// Global worker count; 0 or 1 means serial. Thread-safe to read.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(i) for i in [begin, end), split into contiguous chunks across
// the configured workers. Exceptions from workers are rethrown (first
// by index order). Serial when thread_count() <= 1 or the range is tiny.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t)>& fn);

// Chunked variant: fn(lo, hi) on disjoint [lo, hi) subranges in order of
// lo; chunk boundaries depend only on the range size, not worker count,
// so per-chunk outputs are reproducible.
void parallel_for_chunks(std::int64_t begin, std::int64_t end,
                         const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace latdist
