#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace wmlab {

/// Worker cap from WMLAB_THREADS (0 or unset = hardware concurrency) unless
/// overridden with set_worker_count.
std::size_t worker_count();

/// Overrides the worker cap for this process; 0 restores the environment
/// default.
void set_worker_count(std::size_t n);

/// Splits [begin, end) into fixed chunks of `chunk` indices and calls
/// fn(chunk_index, lo, hi) once per chunk, spread over worker_count()
/// threads. Chunk boundaries do not depend on the worker count, so any
/// per-chunk results combined in chunk order are reproducible.
void for_each_chunk(std::uint64_t begin, std::uint64_t end, std::uint64_t chunk,
                    const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn);

inline std::size_t chunk_count(std::uint64_t begin, std::uint64_t end, std::uint64_t chunk) {
    return end <= begin ? 0 : static_cast<std::size_t>((end - begin + chunk - 1) / chunk);
}

} // namespace wmlab
