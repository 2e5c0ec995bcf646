#include "wmlab/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "wmlab/errors.hpp"

namespace wmlab::seq {

namespace mp = boost::multiprecision;
using u128 = unsigned __int128;
using i128 = __int128;

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// Low 64 bits of floor(x) for a nonnegative multiprecision value.
std::uint64_t low64(const Integer& x) { return static_cast<std::uint64_t>(x & Integer(~std::uint64_t{0})); }

} // namespace

std::string kind_name(const SequenceSpec& spec) {
    return std::visit(overloaded{
                          [](const Bernoulli&) { return std::string("bernoulli"); },
                          [](const Champernowne&) { return std::string("champernowne"); },
                          [](const Rotation&) { return std::string("rotation"); },
                          [](const Avoider&) { return std::string("avoider"); },
                          [](const Periodic&) { return std::string("periodic"); },
                          [](const GeometricColoring&) { return std::string("geometric"); },
                          [](const ShiftIntersection&) { return std::string("shift"); },
                      },
                      spec.kind);
}

AlphaSpec AlphaSpec::sqrt2_minus_1() {
    AlphaSpec a = sqrt_frac(2);
    a.label = "sqrt2-1";
    return a;
}

AlphaSpec AlphaSpec::sqrt_frac(std::uint64_t d) {
    const Integer root = mp::sqrt(Integer(d));
    if (d < 2 || root * root == d)
        throw InputError("rotation angle sqrt(" + std::to_string(d) + ") is rational");
    // floor(sqrt(d) * 2^64) = isqrt(d * 2^128); keep the fractional 64 bits.
    const Integer scaled_root = mp::sqrt(Integer(d) << 128);
    return AlphaSpec{low64(scaled_root), "sqrt(" + std::to_string(d) + ")"};
}

AlphaSpec AlphaSpec::parse(const std::string& label) {
    if (label.empty() || label == "sqrt2-1")
        return sqrt2_minus_1();
    if (label.rfind("sqrt(", 0) == 0 && label.back() == ')') {
        const std::string inner = label.substr(5, label.size() - 6);
        if (inner.empty() || !std::all_of(inner.begin(), inner.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw InputError("malformed rotation angle \"" + label + "\"");
        return sqrt_frac(std::stoull(inner));
    }
    if (label.rfind("0x", 0) == 0 && label.size() > 2 && label.size() <= 18 &&
        std::all_of(label.begin() + 2, label.end(), [](unsigned char c) { return std::isxdigit(c); }))
        return AlphaSpec{std::stoull(label.substr(2), nullptr, 16), label};
    throw InputError("malformed rotation angle \"" + label + "\"");
}

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

bool bernoulli_bit(std::uint64_t seed, std::uint64_t n) noexcept {
    return (splitmix64_mix(seed ^ (n * kGoldenGamma)) & 1U) != 0;
}

bool champernowne_bit(std::uint64_t n) {
    if (n == 0)
        throw InputError("champernowne_bit is 1-indexed");
    std::uint64_t pos = n - 1;
    for (unsigned len = 1; len < 63; ++len) {
        const std::uint64_t count = std::uint64_t{1} << (len - 1);
        const u128 block = u128(count) * len;
        if (pos < block) {
            const std::uint64_t number = count + pos / len;
            const unsigned off = static_cast<unsigned>(pos % len);
            return ((number >> (len - 1 - off)) & 1U) != 0;
        }
        pos -= static_cast<std::uint64_t>(block);
    }
    throw InputError("champernowne index out of range");
}

bool rotation_member(std::uint64_t n, const AlphaSpec& alpha) {
    if (n == 0 || n > kMaxRotationIndex)
        throw InputError("rotation index " + std::to_string(n) + " outside [1, 2^40]");
    static constexpr std::uint64_t lo = static_cast<std::uint64_t>(((u128(1) << 64) + 2) / 3);
    static constexpr std::uint64_t hi = static_cast<std::uint64_t>((u128(7) << 64) / 12);
    const std::uint64_t phase = n * alpha.frac;
    return phase >= lo && phase <= hi;
}

int geometric_color(std::uint64_t m, std::uint64_t ratio) {
    if (m == 0)
        throw InputError("geometric coloring is defined on m >= 1");
    if (ratio < 2)
        throw InputError("geometric coloring needs ratio >= 2");
    unsigned e = 0;
    while (m % ratio == 0) {
        m /= ratio;
        ++e;
    }
    return e % 2 == 0 ? 1 : 2;
}

bool geometric_two_coloring(std::uint64_t m, std::uint64_t ratio, int color_query) {
    return geometric_color(m, ratio) == color_query;
}

SequenceSpec shift_intersection(const SequenceSpec& spec, std::vector<std::uint64_t> shifts) {
    for (auto s : shifts)
        if (s == 0)
            throw InputError("shift sets contain positive integers only");
    std::sort(shifts.begin(), shifts.end());
    shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
    return SequenceSpec{ShiftIntersection{std::make_shared<const SequenceSpec>(spec), std::move(shifts)}};
}

// ---------------------------------------------------------------------------

namespace {

Integer mod_pos(const Integer& x, const Integer& m) {
    Integer r = x % m;
    if (r < 0)
        r += m;
    return r;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer old_r = mod_pos(a, m), r = m, old_s = 1, s = 0;
    while (!is_zero(r)) {
        Integer q = old_r / r;
        Integer t = old_r - q * r;
        old_r = std::move(r);
        r = std::move(t);
        t = old_s - q * s;
        old_s = std::move(s);
        s = std::move(t);
    }
    if (old_r != 1)
        throw InternalError("avoider coefficients are not coprime after normalization");
    return mod_pos(old_s, m);
}

} // namespace

AvoiderParams::AvoiderParams(std::int64_t a, std::int64_t b, std::int64_t c) {
    if (a <= 0 || b <= 0)
        throw InputError("avoider coefficients a, b must be positive");
    if (a == b)
        throw InputError("avoider requires a != b");
    const std::int64_t g = std::gcd(a, b);
    if (c % g != 0) {
        degraded_ = true;
        a_ = a;
        b_ = b;
        c_ = c;
        return;
    }
    a /= g;
    b /= g;
    c /= g;
    if (a > b) {
        std::swap(a, b);
        c = -c;
    }
    a_ = a;
    b_ = b;
    c_ = c;

    const Integer limit = Integer(1) << 62;
    Integer power = 1;
    powers_.push_back(1);
    std::size_t count = 0;
    while (power * b_ * b_ < limit) {
        power *= b_;
        powers_.push_back(static_cast<std::uint64_t>(power));
        ++count;
    }
    if (count == 0)
        throw InputError("avoider coefficient b = " + std::to_string(b_) + " is too large");
    // powers_[i] = b^i for i <= count; levels_[i] needs b^{i+1}.
    for (const auto& l : avoider_levels(*this, count - 1))
        levels_.push_back(static_cast<std::uint64_t>(l));
}

std::vector<Integer> avoider_levels(const AvoiderParams& params, std::size_t i_max) {
    if (params.degraded())
        throw InputError("avoider levels are undefined when gcd(a, b) does not divide c");
    const Integer a = params.a(), b = params.b(), c = params.c();
    std::vector<Integer> out;
    Integer modulus = b;
    out.push_back(mod_pos(mod_inverse(a, modulus) * c, modulus));
    for (std::size_t i = 1; i <= i_max; ++i) {
        modulus *= b;
        out.push_back(mod_pos(mod_inverse(a, modulus) * (b * out.back() + c), modulus));
    }
    return out;
}

bool AvoiderParams::residual(std::uint64_t n) const noexcept {
    if (degraded_)
        return false;
    return i128(a_ - b_) * i128(n) == i128(c_);
}

std::optional<unsigned> AvoiderParams::block_index(std::uint64_t n) const {
    if (degraded_)
        throw InputError("block index is undefined for a degraded avoider");
    if (n == 0)
        throw InputError("avoider indices start at 1");
    if (residual(n))
        return std::nullopt;
    unsigned i = 0;
    while (i < levels_.size()) {
        if (n % powers_[i + 1] != levels_[i])
            return i;
        ++i;
    }
    throw InternalError("avoider block index exceeded the memoized levels");
}

AvoiderChain AvoiderParams::chain(std::uint64_t n) const {
    AvoiderChain out;
    out.chain.push_back(n);
    auto idx = block_index(n);
    std::uint64_t cur = n;
    while (idx && *idx > 0) {
        const i128 num = i128(a_) * i128(cur) - i128(c_);
        if (num <= 0 || num % b_ != 0)
            break;
        const auto y = static_cast<std::uint64_t>(num / b_);
        const auto iy = block_index(y);
        if (!iy || *iy + 1 != *idx)
            break;
        out.chain.push_back(y);
        cur = y;
        idx = iy;
    }
    out.ancestor = out.chain.back();
    out.length = out.chain.size();
    return out;
}

bool AvoiderParams::member(std::uint64_t n, std::uint64_t seed) const {
    if (n == 0)
        return false;
    if (degraded_)
        return bernoulli_bit(seed, n);
    if (residual(n))
        return false;
    const auto ch = chain(n);
    const bool s = bernoulli_bit(seed, ch.ancestor);
    return ch.length % 2 == 1 ? s : !s;
}

AvoiderChain avoider_chain(std::uint64_t n, const AvoiderParams& params) { return params.chain(n); }

bool avoider_member(std::uint64_t n, const AvoiderParams& params, std::uint64_t seed) {
    return params.member(n, seed);
}

// ---------------------------------------------------------------------------

Sequence::Sequence(SequenceSpec spec) : spec_(std::move(spec)) {
    std::visit(overloaded{
                   [&](const Avoider& av) { avoider_ = std::make_shared<const AvoiderParams>(av.a, av.b, av.c); },
                   [&](const Periodic& p) {
                       if (p.pattern.empty() ||
                           !std::all_of(p.pattern.begin(), p.pattern.end(), [](char ch) { return ch == '0' || ch == '1'; }))
                           throw InputError("periodic pattern must be a nonempty string of 0/1");
                   },
                   [&](const GeometricColoring& g) {
                       if (g.ratio < 2)
                           throw InputError("geometric coloring needs ratio >= 2");
                       if (g.color != 1 && g.color != 2)
                           throw InputError("geometric coloring color must be 1 or 2");
                   },
                   [&](const ShiftIntersection& s) {
                       if (!s.base)
                           throw InputError("shift intersection without a base sequence");
                       for (auto sh : s.shifts)
                           if (sh == 0)
                               throw InputError("shift sets contain positive integers only");
                       base_ = std::make_shared<const Sequence>(*s.base);
                   },
                   [](const auto&) {},
               },
               spec_.kind);
}

bool Sequence::contains(std::uint64_t n) const {
    if (n == 0)
        return false;
    return std::visit(overloaded{
                          [&](const Bernoulli& b) { return bernoulli_bit(b.seed, n); },
                          [&](const Champernowne&) { return champernowne_bit(n); },
                          [&](const Rotation& r) { return rotation_member(n, r.alpha); },
                          [&](const Avoider& av) { return avoider_->member(n, av.seed); },
                          [&](const Periodic& p) { return p.pattern[n % p.pattern.size()] == '1'; },
                          [&](const GeometricColoring& g) { return geometric_color(n, g.ratio) == g.color; },
                          [&](const ShiftIntersection& s) {
                              if (!base_->contains(n))
                                  return false;
                              return std::all_of(s.shifts.begin(), s.shifts.end(),
                                                 [&](std::uint64_t sh) { return base_->contains(n + sh); });
                          },
                      },
                      spec_.kind);
}

bool member(const SequenceSpec& spec, std::uint64_t n) { return Sequence(spec).contains(n); }

} // namespace wmlab::seq
