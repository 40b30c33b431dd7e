#pragma once

#include <cstdint>
#include <functional>
#include <string_view>

#include "circuitlab/rng.hpp"

namespace circuitlab {

/// Run fn(i) for i in [0, n) on up to `threads` workers. Each task owns its
/// output slot, so results are independent of scheduling; callers merge in
/// index order afterwards.
void run_parallel(long n, int threads, const std::function<void(long)>& fn);

/// The one canonical stream-addressing rule for sweeps: a cell of a grid and
/// a realization index map to a stream as
/// (master seed, realization, hash(experiment) ^ cell).
inline RngStream cell_stream(std::uint64_t master_seed, std::string_view experiment,
                             std::uint64_t cell, std::uint64_t realization) {
  return RngStream(master_seed, realization, fnv1a64(experiment) ^ splitmix64(cell));
}

int default_thread_count();

}  // namespace circuitlab
