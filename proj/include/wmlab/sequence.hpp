#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wmlab/linalg.hpp"

namespace wmlab::seq {

// ---------------------------------------------------------------------------
// Specs. Membership is a pure function of (spec, n) for n >= 1; indices below
// 1 are never members.

struct Bernoulli {
    std::uint64_t seed = 1;
};

struct Champernowne {};

/// Fractional part of the rotation angle as a 0.64 fixed-point fraction.
struct AlphaSpec {
    std::uint64_t frac = 0;
    std::string label;

    /// sqrt(2) - 1, the default angle.
    static AlphaSpec sqrt2_minus_1();
    /// Fractional part of sqrt(d) for a non-square d >= 2.
    static AlphaSpec sqrt_frac(std::uint64_t d);
    /// "sqrt2-1", "sqrt(d)", or a raw fraction "0x<16 hex digits>".
    static AlphaSpec parse(const std::string& label);
};

/// {n : frac(n alpha) in [1/3, 7/12]}.
struct Rotation {
    AlphaSpec alpha = AlphaSpec::sqrt2_minus_1();
};

/// Equation-avoiding set A_S for a x = b y + c with S = Bernoulli(seed).
struct Avoider {
    std::int64_t a = 1;
    std::int64_t b = 2;
    std::int64_t c = 0;
    std::uint64_t seed = 1;
};

/// bit(n) = pattern[n mod |pattern|].
struct Periodic {
    std::string pattern = "1";
};

/// Color class of the two-coloring that alternates along every geometric
/// progression a, a n, a n^2, ...
struct GeometricColoring {
    std::uint64_t ratio = 2;
    int color = 1;
};

struct SequenceSpec;

/// {n : n in base and n + s in base for all s in shifts}.
struct ShiftIntersection {
    std::shared_ptr<const SequenceSpec> base;
    std::vector<std::uint64_t> shifts;
};

struct SequenceSpec {
    std::variant<Bernoulli, Champernowne, Rotation, Avoider, Periodic, GeometricColoring, ShiftIntersection> kind;
};

/// Short kind name used in files and on the command line.
std::string kind_name(const SequenceSpec& spec);

// ---------------------------------------------------------------------------
// Generators.

/// splitmix64 finalizer; the stateless core of bernoulli_bit.
std::uint64_t splitmix64_mix(std::uint64_t x) noexcept;

/// Low bit of splitmix64_mix(seed ^ (n * golden_gamma)).
bool bernoulli_bit(std::uint64_t seed, std::uint64_t n) noexcept;

/// n-th bit (1-indexed) of 1 10 11 100 101 ..., in O(log n).
bool champernowne_bit(std::uint64_t n);

/// Largest index accepted by rotation_member (fixed-point error guard).
inline constexpr std::uint64_t kMaxRotationIndex = std::uint64_t{1} << 40;

/// frac(n alpha) in [1/3, 7/12] with 64-bit wraparound arithmetic. Throws
/// InputError for n = 0 or n > kMaxRotationIndex.
bool rotation_member(std::uint64_t n, const AlphaSpec& alpha = AlphaSpec::sqrt2_minus_1());

/// Color (1 or 2) of m: write m = a n^e with n not dividing a; color 1 iff e
/// is even.
int geometric_color(std::uint64_t m, std::uint64_t ratio);
bool geometric_two_coloring(std::uint64_t m, std::uint64_t ratio, int color_query);

SequenceSpec shift_intersection(const SequenceSpec& spec, std::vector<std::uint64_t> shifts);

// ---------------------------------------------------------------------------
// Equation-avoiding construction.

struct AvoiderChain {
    std::vector<std::uint64_t> chain;
    std::uint64_t ancestor = 0;
    std::size_t length = 0;
};

/// Normalized parameters of a x = b y + c with memoized levels l_i.
///
/// Normalization divides by g = gcd(a, b) when g | c and swaps to
/// (b, a, -c) when a > b, so that a < b and gcd(a, b) = 1. When g does not
/// divide c the equation has no integer solutions and the set degrades to
/// the plain Bernoulli set.
class AvoiderParams {
public:
    /// Throws InputError unless a, b > 0 and a != b.
    AvoiderParams(std::int64_t a, std::int64_t b, std::int64_t c);

    bool degraded() const noexcept { return degraded_; }
    std::int64_t a() const noexcept { return a_; }
    std::int64_t b() const noexcept { return b_; }
    std::int64_t c() const noexcept { return c_; }

    /// Memoized l_0, l_1, ... while b^{i+1} < 2^62.
    const std::vector<std::uint64_t>& levels() const noexcept { return levels_; }

    /// The single n in every H_i, if any: the solution of (a - b) n = c.
    bool residual(std::uint64_t n) const noexcept;

    /// i with n in B_i = H_i \ H_{i+1}; nullopt for the residual element.
    std::optional<unsigned> block_index(std::uint64_t n) const;

    AvoiderChain chain(std::uint64_t n) const;

    /// Membership of n in A_S with S = Bernoulli(seed).
    bool member(std::uint64_t n, std::uint64_t seed) const;

private:
    std::int64_t a_ = 0;
    std::int64_t b_ = 0;
    std::int64_t c_ = 0;
    bool degraded_ = false;
    std::vector<std::uint64_t> levels_;
    std::vector<std::uint64_t> powers_;
};

/// l_0..l_{i_max} exactly: l_0 = a^{-1} c mod b and
/// l_i = a^{-1} (b l_{i-1} + c) mod b^{i+1}. Requires normalized,
/// non-degraded params.
std::vector<Integer> avoider_levels(const AvoiderParams& params, std::size_t i_max);

AvoiderChain avoider_chain(std::uint64_t n, const AvoiderParams& params);
bool avoider_member(std::uint64_t n, const AvoiderParams& params, std::uint64_t seed);

// ---------------------------------------------------------------------------

/// A spec prepared for repeated membership queries (avoider levels are
/// computed once). Immutable after construction and safe to share across
/// threads.
class Sequence {
public:
    explicit Sequence(SequenceSpec spec);

    bool contains(std::uint64_t n) const;
    const SequenceSpec& spec() const noexcept { return spec_; }

private:
    SequenceSpec spec_;
    std::shared_ptr<const AvoiderParams> avoider_;
    std::shared_ptr<const Sequence> base_;
};

/// One-off membership query; prefer Sequence for scans.
bool member(const SequenceSpec& spec, std::uint64_t n);

} // namespace wmlab::seq
