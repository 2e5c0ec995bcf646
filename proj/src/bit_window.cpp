#include "wmlab/bit_window.hpp"

#include <array>
#include <bit>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "wmlab/errors.hpp"
#include "wmlab/parallel.hpp"

namespace wmlab::seq {

namespace {

constexpr std::array<char, 8> kMagic{'W', 'M', 'S', 'E', 'Q', '\0', '\1', '\0'};
// Multiple of 8 so chunks own whole bytes.
constexpr std::uint64_t kChunkBits = std::uint64_t{1} << 16;

void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> buf{};
    for (int i = 0; i < 8; ++i)
        buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(buf.data(), buf.size());
}

std::uint64_t get_u64(std::istream& in) {
    std::array<unsigned char, 8> buf{};
    if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size()))
        throw InputError("truncated bit window header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= std::uint64_t{buf[i]} << (8 * i);
    return v;
}

} // namespace

bool BitWindow::at(std::int64_t n) const {
    if (n < 1)
        return false;
    const auto u = static_cast<std::uint64_t>(n);
    if (u < start || u - start >= length)
        throw std::out_of_range("index " + std::to_string(n) + " outside the materialized window");
    return bit(u - start);
}

std::uint64_t BitWindow::popcount() const {
    std::uint64_t total = 0;
    for (auto b : bytes)
        total += static_cast<std::uint64_t>(std::popcount(b));
    return total;
}

BitWindow materialize(const Sequence& seq, std::uint64_t start, std::uint64_t length) {
    BitWindow w;
    w.spec = seq.spec();
    w.start = start;
    w.length = length;
    w.bytes.assign((length + 7) / 8, 0);
    for_each_chunk(0, length, kChunkBits, [&](std::size_t, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t t = lo; t < hi; ++t)
            if (seq.contains(start + t))
                w.bytes[t >> 3] |= static_cast<std::uint8_t>(1U << (t & 7));
    });
    return w;
}

BitWindow materialize(const SequenceSpec& spec, std::uint64_t start, std::uint64_t length) {
    return materialize(Sequence(spec), start, length);
}

void write_bits(std::ostream& out, const BitWindow& w) {
    out.write(kMagic.data(), kMagic.size());
    put_u64(out, w.start);
    put_u64(out, w.length);
    out.write(reinterpret_cast<const char*>(w.bytes.data()), static_cast<std::streamsize>(w.bytes.size()));
}

BitWindow read_bits(std::istream& in) {
    std::array<char, 8> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic)
        throw InputError("not a WMSEQ bit window (bad magic)");
    BitWindow w;
    w.start = get_u64(in);
    w.length = get_u64(in);
    w.bytes.resize((w.length + 7) / 8);
    if (!in.read(reinterpret_cast<char*>(w.bytes.data()), static_cast<std::streamsize>(w.bytes.size())))
        throw InputError("truncated bit window payload");
    // Padding bits past the end must be zero.
    if (w.length % 8 != 0 && (w.bytes.back() >> (w.length % 8)) != 0)
        throw InputError("nonzero padding bits in bit window");
    return w;
}

} // namespace wmlab::seq
