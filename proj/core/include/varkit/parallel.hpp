#pragma once

#include <cstdint>
#include <functional>

namespace varkit {

/// Runs fn(0..n-1) across up to `workers` threads. Each index must write only
/// its own output slot; results are then independent of the thread count and
/// of scheduling order. workers <= 1 runs inline.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

/// SplitMix64-style mixer deriving a per-stream seed from (seed, stream).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace varkit
