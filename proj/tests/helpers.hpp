#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "wmlab/decision.hpp"
#include "wmlab/linalg.hpp"

namespace testing {

using wmlab::Rational;
using wmlab::RationalMatrix;
using wmlab::RationalVector;

inline RationalVector V(std::initializer_list<Rational> xs) { return RationalVector(xs); }

inline RationalMatrix M(std::initializer_list<std::initializer_list<Rational>> rows) {
    std::vector<RationalVector> r;
    for (const auto& row : rows)
        r.emplace_back(row);
    return RationalMatrix::from_rows(r);
}

inline wmlab::AffineSubspace system(RationalMatrix m, RationalVector rhs) {
    wmlab::AffineSubspace s;
    s.k = m.cols();
    s.matrix = std::move(m);
    s.rhs = std::move(rhs);
    return s;
}

inline Rational Q(long p, long q = 1) { return q < 0 ? Rational(-p, -q) : Rational(p, q); }

/// Uniform integer in [lo, hi].
inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::int64_t lo,
                                    std::int64_t hi) {
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = uniform(rng, lo, hi);
    return m;
}

} // namespace testing
