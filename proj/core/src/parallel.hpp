// Work distribution over a fixed index range.

#ifndef FRACPOW_SRC_PARALLEL_HPP_
#define FRACPOW_SRC_PARALLEL_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace fracpow::detail {

  template <typename Body>
  void parallel_for(std::uint64_t first, std::uint64_t last, unsigned jobs, Body const& body) {
    if (last <= first) {
      return;
    }
    std::uint64_t const n = last - first;
    jobs                  = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(jobs, n)));
    if (jobs == 1) {
      for (std::uint64_t i = first; i < last; ++i) {
        body(i);
      }
      return;
    }
    std::atomic<std::uint64_t> next{first};
    std::vector<std::thread>   pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (std::uint64_t i = next++; i < last; i = next++) {
          body(i);
        }
      });
    }
    for (auto& th : pool) {
      th.join();
    }
  }

}  // namespace fracpow::detail

#endif  // FRACPOW_SRC_PARALLEL_HPP_
