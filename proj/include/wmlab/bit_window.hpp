#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "wmlab/sequence.hpp"

namespace wmlab::seq {

/// Materialized membership bits for indices [start, start + length).
/// Bits are packed LSB-first within each byte, as in the .bits file format.
struct BitWindow {
    std::optional<SequenceSpec> spec;
    std::uint64_t start = 1;
    std::uint64_t length = 0;
    std::vector<std::uint8_t> bytes;

    bool bit(std::uint64_t offset) const { return (bytes[offset >> 3] >> (offset & 7)) & 1U; }

    /// Membership of absolute index n; indices below 1 are never members.
    /// Throws std::out_of_range for other indices outside the window.
    bool at(std::int64_t n) const;

    bool covers(std::uint64_t first, std::uint64_t last) const noexcept {
        return first >= start && last < start + length;
    }

    std::uint64_t popcount() const;
};

/// Evaluates the sequence on [start, start + length) in fixed-size chunks
/// spread over the worker pool; the result does not depend on the worker
/// count.
BitWindow materialize(const SequenceSpec& spec, std::uint64_t start, std::uint64_t length);
BitWindow materialize(const Sequence& seq, std::uint64_t start, std::uint64_t length);

/// 8-byte magic "WMSEQ\0\1\0", little-endian u64 start, u64 length, then the
/// packed bits. The sequence spec travels in a JSON sidecar, not in this stream.
void write_bits(std::ostream& out, const BitWindow& w);
/// Throws InputError on a bad magic or truncated payload.
BitWindow read_bits(std::istream& in);

} // namespace wmlab::seq
