#pragma once

// Slow, independent reference implementations used only by the tests. None
// of these call into the library beyond its value types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wmlab/linalg.hpp"

namespace oracle {

using wmlab::Integer;
using wmlab::Rational;
using wmlab::RationalVector;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

// ---------------------------------------------------------------------------
// Linear algebra

/// Rank by fraction-free (Bareiss) elimination on a copy.
inline std::size_t bareiss_rank(std::vector<std::vector<Integer>> a) {
    const std::size_t rows = a.size();
    if (rows == 0)
        return 0;
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

inline std::vector<std::vector<Integer>> to_integer_rows(const std::vector<RationalVector>& rows) {
    std::vector<std::vector<Integer>> out;
    for (const auto& row : rows) {
        Integer l = 1;
        for (const auto& x : row)
            l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
        std::vector<Integer> r;
        for (const auto& x : row)
            r.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
        out.push_back(std::move(r));
    }
    return out;
}

inline std::size_t rank_of(const std::vector<RationalVector>& rows) { return bareiss_rank(to_integer_rows(rows)); }

/// Null space of the given rows by textbook Gauss-Jordan with rationals.
inline std::vector<RationalVector> nullspace(std::vector<RationalVector> a, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0)
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[piv], a[r]);
        const Rational inv = 1 / a[r][c];
        for (auto& x : a[r])
            x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            const Rational f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end())
            continue;
        RationalVector v(cols);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline RationalVector primitive_of(const RationalVector& v) {
    Integer l = 1;
    for (const auto& x : v)
        l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    Integer g = 0;
    for (const auto& x : v)
        g = boost::multiprecision::gcd(g, boost::multiprecision::numerator(Rational(x * l)));
    if (g == 0)
        return v;
    RationalVector out;
    for (const auto& x : v)
        out.push_back(x * l / g);
    return out;
}

/// Extreme rays of {x : m x = 0, x >= 0}: a nonzero nonnegative x is extreme
/// iff the constraints active at x (m plus the vanishing coordinates) have
/// a one-dimensional solution space.
inline std::vector<RationalVector> extreme_rays(const std::vector<RationalVector>& m, std::size_t k) {
    std::set<RationalVector> found;
    for (std::uint32_t zero = 0; zero < (1U << k); ++zero) {
        auto rows = m;
        for (std::size_t i = 0; i < k; ++i)
            if (zero >> i & 1U) {
                RationalVector e(k);
                e[i] = 1;
                rows.push_back(e);
            }
        const auto ns = nullspace(rows, k);
        if (ns.size() != 1)
            continue;
        auto v = ns[0];
        const bool nonneg = std::all_of(v.begin(), v.end(), [](const Rational& x) { return x >= 0; });
        const bool nonpos = std::all_of(v.begin(), v.end(), [](const Rational& x) { return x <= 0; });
        if (!nonneg && !nonpos)
            continue;
        if (nonpos)
            for (auto& x : v)
                x = -x;
        found.insert(primitive_of(v));
    }
    return {found.begin(), found.end()};
}

/// Feasibility of {lambda >= 0 : sum_j lambda_j gens[j] = x} by
/// Fourier-Motzkin elimination.
inline bool conic_member(const std::vector<RationalVector>& gens, const RationalVector& x) {
    const std::size_t vars = gens.size();
    const std::size_t k = x.size();
    // Rows c . lambda <= d.
    struct Ineq {
        RationalVector c;
        Rational d;
    };
    std::vector<Ineq> sys;
    for (std::size_t i = 0; i < k; ++i) {
        RationalVector c(vars);
        for (std::size_t j = 0; j < vars; ++j)
            c[j] = gens[j][i];
        sys.push_back({c, x[i]});
        for (auto& v : c)
            v = -v;
        sys.push_back({c, -x[i]});
    }
    for (std::size_t j = 0; j < vars; ++j) {
        RationalVector c(vars);
        c[j] = -1;
        sys.push_back({c, 0});
    }
    for (std::size_t j = 0; j < vars; ++j) {
        std::vector<Ineq> pos, neg, rest;
        for (auto& q : sys) {
            if (q.c[j] > 0)
                pos.push_back(q);
            else if (q.c[j] < 0)
                neg.push_back(q);
            else
                rest.push_back(q);
        }
        for (const auto& p : pos)
            for (const auto& n : neg) {
                const Rational sp = 1 / p.c[j];
                const Rational sn = -1 / n.c[j];
                Ineq comb{RationalVector(vars), p.d * sp + n.d * sn};
                for (std::size_t t = 0; t < vars; ++t)
                    comb.c[t] = p.c[t] * sp + n.c[t] * sn;
                comb.c[j] = 0;
                rest.push_back(std::move(comb));
            }
        // Deduplicate to keep the system small.
        std::map<std::pair<RationalVector, Rational>, bool> seen;
        sys.clear();
        for (auto& q : rest) {
            // Normalize by the first nonzero coefficient's magnitude.
            Rational s = 0;
            for (const auto& v : q.c)
                if (v != 0) {
                    s = abs(v);
                    break;
                }
            if (s != 0) {
                for (auto& v : q.c)
                    v /= s;
                q.d /= s;
            }
            if (seen.emplace(std::make_pair(q.c, q.d), true).second)
                sys.push_back(q);
        }
    }
    return std::all_of(sys.begin(), sys.end(), [](const Ineq& q) { return q.d >= 0; });
}

/// Integer solutions of m x = d with x in [-B, B]^k. When the last
/// coordinate is pinned by some row, it is solved for instead of scanned.
inline bool integer_point_in_box(const IntMatrix& m, const std::vector<std::int64_t>& d, std::size_t k,
                                 std::int64_t bound) {
    std::optional<std::size_t> pin;
    for (std::size_t r = 0; r < m.size(); ++r)
        if (m[r][k - 1] != 0) {
            pin = r;
            break;
        }
    std::vector<std::int64_t> x(k, -bound);
    auto check = [&]() {
        for (std::size_t r = 0; r < m.size(); ++r) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < k; ++i)
                s += m[r][i] * x[i];
            if (s != d[r])
                return false;
        }
        return true;
    };
    const std::size_t scanned = k - 1;
    while (true) {
        if (pin) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < scanned; ++i)
                s += m[*pin][i] * x[i];
            const std::int64_t num = d[*pin] - s;
            const std::int64_t den = m[*pin][k - 1];
            if (num % den == 0) {
                x[k - 1] = num / den;
                if (x[k - 1] >= -bound && x[k - 1] <= bound && check())
                    return true;
            }
        } else {
            x[k - 1] = 0; // unconstrained coordinate
            if (check())
                return true;
        }
        std::size_t pos = 0;
        while (pos < scanned && x[pos] == bound)
            x[pos++] = -bound;
        if (pos == scanned)
            return false;
        ++x[pos];
    }
}

// ---------------------------------------------------------------------------
// Columns condition by enumerating every ordered set partition.

inline bool columns_condition(const std::vector<RationalVector>& cols) {
    const std::size_t q = cols.size();
    const std::size_t p = cols.empty() ? 0 : cols[0].size();
    auto sum_of = [&](std::uint32_t mask) {
        RationalVector s(p);
        for (std::size_t j = 0; j < q; ++j)
            if (mask >> j & 1U)
                for (std::size_t i = 0; i < p; ++i)
                    s[i] += cols[j][i];
        return s;
    };
    auto in_span = [&](std::uint32_t used, const RationalVector& v) {
        std::vector<RationalVector> vecs;
        for (std::size_t j = 0; j < q; ++j)
            if (used >> j & 1U)
                vecs.push_back(cols[j]);
        const std::size_t r0 = rank_of(vecs);
        vecs.push_back(v);
        return rank_of(vecs) == r0;
    };
    const std::uint32_t full = (1U << q) - 1;
    std::function<bool(std::uint32_t)> extend = [&](std::uint32_t used) -> bool {
        if (used == full)
            return true;
        const std::uint32_t rest = full & ~used;
        for (std::uint32_t block = 1; block <= full; ++block) {
            if ((block & rest) != block)
                continue;
            const auto s = sum_of(block);
            const bool ok = used == 0 ? std::all_of(s.begin(), s.end(), [](const Rational& x) { return x == 0; })
                                      : in_span(used, s);
            if (ok && extend(used | block))
                return true;
        }
        return false;
    };
    return extend(0);
}

// ---------------------------------------------------------------------------
// Sequences

/// Stateful splitmix64 as published: state += gamma, then the finalizer.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// "1" "10" "11" "100" ... concatenated; bits[0] is position 1.
inline std::string champernowne_prefix(std::size_t len) {
    std::string s;
    for (std::uint64_t v = 1; s.size() < len; ++v) {
        std::string b;
        for (std::uint64_t t = v; t != 0; t >>= 1)
            b.push_back(static_cast<char>('0' + (t & 1U)));
        s.append(b.rbegin(), b.rend());
    }
    s.resize(len);
    return s;
}

/// frac(n (sqrt 2 - 1)) in [1/3, 7/12] with a 256-bit fraction of alpha.
class RotationOracle {
public:
    RotationOracle() {
        const Integer one = Integer(1) << 256;
        alpha_ = boost::multiprecision::sqrt(Integer(2) << 512) - one;
        one_ = one;
    }
    bool member(std::uint64_t n) const {
        const Integer f = (alpha_ * n) % one_;
        return 3 * f >= one_ && 12 * f <= 7 * one_;
    }

private:
    Integer alpha_;
    Integer one_;
};

/// l_0..l_{i_max}: every residue is tried while b^{i+1} is small, then the
/// congruence is solved with a textbook extended Euclid. Requires
/// b^{i_max+1} < 2^62.
inline std::vector<std::uint64_t> avoider_levels(std::int64_t a, std::int64_t b, std::int64_t c, std::size_t i_max) {
    using i128 = __int128;
    auto solve = [&](i128 target, i128 mod) -> i128 {
        if (mod <= 1000000) {
            for (i128 x = 0; x < mod; ++x)
                if ((((a * x - target) % mod) + mod) % mod == 0)
                    return x;
            return -1;
        }
        i128 r0 = mod, r1 = ((a % mod) + mod) % mod, t0 = 0, t1 = 1;
        while (r1 != 0) {
            const i128 q = r0 / r1;
            const i128 r2 = r0 - q * r1;
            r0 = r1;
            r1 = r2;
            const i128 t2 = t0 - q * t1;
            t0 = t1;
            t1 = t2;
        }
        const i128 inv = ((t0 % mod) + mod) % mod;
        return ((inv * (((target % mod) + mod) % mod)) % mod + mod) % mod;
    };
    std::vector<std::uint64_t> out;
    i128 mod = b;
    i128 prev = 0;
    for (std::size_t i = 0; i <= i_max; ++i) {
        const i128 target = i == 0 ? i128(c) : i128(b) * prev + c;
        prev = solve(target, mod);
        out.push_back(static_cast<std::uint64_t>(prev));
        mod *= b;
    }
    return out;
}

/// Exponent of `ratio` in m.
inline int valuation(std::uint64_t m, std::uint64_t ratio) {
    int e = 0;
    while (m % ratio == 0) {
        m /= ratio;
        ++e;
    }
    return e;
}

} // namespace oracle
