#include "latdist/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace latdist {

namespace {
std::atomic<unsigned> g_threads{1};
constexpr std::int64_t kChunk = 1 << 14;  // fixed: boundaries never depend on worker count
}  // namespace

void set_thread_count(unsigned n) { g_threads.store(n == 0 ? 1u : n); }
unsigned thread_count() { return g_threads.load(); }

void parallel_for_chunks(std::int64_t begin, std::int64_t end,
                         const std::function<void(std::int64_t, std::int64_t)>& fn) {
  if (begin >= end) return;
  const std::int64_t n_chunks = (end - begin + kChunk - 1) / kChunk;
  const unsigned workers = std::min<std::int64_t>(thread_count(), n_chunks);
  if (workers <= 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) {
      const std::int64_t lo = begin + c * kChunk;
      fn(lo, std::min(end, lo + kChunk));
    }
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::pair<std::int64_t, std::exception_ptr>> errors;
  std::mutex err_mu;
  auto body = [&] {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      const std::int64_t lo = begin + c * kChunk;
      try {
        fn(lo, std::min(end, lo + kChunk));
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        errors.emplace_back(c, std::current_exception());
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (!errors.empty()) {
    std::sort(errors.begin(), errors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::rethrow_exception(errors.front().second);
  }
}

void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t)>& fn) {
  parallel_for_chunks(begin, end, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) fn(i);
  });
}

}  // namespace latdist
