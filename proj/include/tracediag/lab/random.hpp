#pragma once

#include "tracediag/core/diagram.hpp"
#include "tracediag/core/matrix.hpp"

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace tracediag::lab {

using Rng = std::mt19937_64;

/// Independent stream for one trial: mt19937_64 seeded by a splitmix64 mix of (seed, trial).
Rng trial_rng(std::uint64_t seed, std::size_t trial);

/// Entries uniform in [lo, hi].
Matrix random_int_matrix(Rng& rng, std::size_t n, long lo = -9, long hi = 9);
/// Skew-symmetric with upper entries uniform in [lo, hi].
Matrix random_skew_matrix(Rng& rng, std::size_t n, long lo = -9, long hi = 9);
/// Entries p/q with p in [-9, 9] and q in [1, 5].
Matrix random_rational_matrix(Rng& rng, std::size_t n);
Vector random_rational_vector(Rng& rng, std::size_t n);

/// Strands permuted by `sigma` (0-based images) where strand i carries the marking words[i].
/// Leaves are named as in the standard library builders.
TraceDiagram marked_permutation(Dimension dim, const std::vector<int>& sigma,
                                const std::vector<std::vector<std::string>>& words);

/// A random framed diagram with `inputs` inputs drawn from marked permutations, epsilon nodes and
/// two-vertex diagrams. Markings use the given labels.
TraceDiagram random_framed_diagram(Rng& rng, Dimension dim, std::size_t inputs, const std::vector<std::string>& labels);

/// Runs f(0..count-1) on up to `jobs` threads; results are stored by index so the output does not
/// depend on scheduling. The exception of the lowest failing index is rethrown.
template <class R, class F>
std::vector<R> run_indexed(std::size_t count, unsigned jobs, F f) {
  std::vector<R> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace tracediag::lab
