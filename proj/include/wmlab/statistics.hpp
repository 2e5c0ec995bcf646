#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wmlab/bit_window.hpp"
#include "wmlab/linalg.hpp"
#include "wmlab/sequence.hpp"

namespace wmlab::stats {

using seq::BitWindow;
using seq::SequenceSpec;

// All counters are exact integers and every average is returned as an exact
// rational. Window-based overloads require the window to cover the indices
// they read (std::out_of_range otherwise); spec-based overloads materialize
// exactly what they need.

struct Checkpoint {
    std::uint64_t n = 0;
    std::uint64_t count = 0;
    Rational value() const { return Rational(Integer(count), Integer(n)); }
};

/// Running density count/N at N_i = i^2 (i >= 1, N_i <= n) and at n itself.
std::vector<Checkpoint> density(const BitWindow& w, std::uint64_t n);
std::vector<Checkpoint> density(const SequenceSpec& spec, std::uint64_t n);

inline constexpr unsigned kMaxWordLength = 24;

/// Sliding-window word counts over positions 1..n. Words are read left to
/// right: "10" is a member at p followed by a non-member at p + 1.
struct WordFrequencies {
    std::uint64_t n = 0;
    unsigned max_len = 0;
    /// counts[L][w] for 1 <= L <= max_len, w the word as an L-bit integer
    /// with the first bit most significant.
    std::vector<std::vector<std::uint64_t>> counts;

    std::uint64_t count(const std::string& word) const;
    /// count / n.
    Rational frequency(const std::string& word) const;
    /// max over |w| = len of |count/n - 2^-len|.
    double max_deviation(unsigned len) const;
};

WordFrequencies word_frequencies(const BitWindow& w, std::uint64_t n, unsigned max_len);
WordFrequencies word_frequencies(const SequenceSpec& spec, std::uint64_t n, unsigned max_len);

struct CorrelationQuery {
    /// Strictly increasing positive shifts i_1 < ... < i_k (possibly empty).
    std::vector<std::uint64_t> shifts;
    std::uint64_t n = 1;
};

/// T_N = (1/N) sum_n chi(n) prod_t chi(n + i_t), chi = 2 * 1_A - 1.
Rational chi_correlation(const BitWindow& w, const CorrelationQuery& q);
Rational chi_correlation(const SequenceSpec& spec, const CorrelationQuery& q);

struct ProductAverageQuery {
    /// (a_i, b_i) with a_i > 0.
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    /// f_i; empty means all zero.
    std::vector<std::int64_t> shifts;
    std::uint64_t m = 1;
    std::uint64_t n = 1;
    /// One sequence per factor, or a single sequence shared by all factors.
    std::vector<SequenceSpec> sequences;
    /// Reject pairs with a vanishing 2x2 determinant.
    bool require_nonsingular = true;
};

struct ProductNorms {
    Rational norm_w_squared;
    Rational norm_v_squared;
    double norm_w = 0;
    double norm_v = 0;
    /// Measured density of each factor's sequence over [1, max index].
    std::vector<Rational> densities;
};

/// ||w||_N and ||v||_N for
///   w(n) = (1/M) sum_m prod_i xi_i(a_i n + b_i m + f_i),  xi_i = 1_{A_i} - d_i
///   v(n) = (1/M) sum_m prod_i 1_{A_i}(a_i n + b_i m + f_i)
/// with <x, y>_N = (1/N) sum_{n=1}^N x(n) y(n). Indices below 1 contribute 0.
ProductNorms averaged_product_norm(const ProductAverageQuery& q);

struct SubsampleResult {
    Rational full;
    Rational subsampled;
    Rational difference;
};

/// (1/N) sum_n prod_t xi(n + b_t) against (1/N) sum_n prod_t xi(a n + b_t),
/// xi = 1_A - d with d measured over every index read.
SubsampleResult subsample_compare(const SequenceSpec& spec, std::uint64_t a, const std::vector<std::int64_t>& shifts,
                                  std::uint64_t n);

struct VdcReport {
    std::vector<double> correlations; ///< (1/J) sum_j <u_j, u_{j+i}>, i = 1..I
    double good_fraction = 0;         ///< share of i with |correlation| < eps/2
    double average_norm = 0;          ///< ||(1/J) sum_j u_j||
    bool hypothesis_held = false;     ///< good_fraction >= 1 - eps/3
    bool conclusion_held = false;     ///< average_norm < eps
    bool squared_bound_held = false;  ///< average_norm^2 < eps
    bool in_threshold_regime = false; ///< I >= 12/eps and (J + I)/J < 12/11
};

/// Numeric harness for the van der Corput bound on a family u_1..u_{J+I}
/// (row j - 1 holds u_j). Throws InputError if some ||u_j|| > 1 or fewer
/// than J + I vectors are supplied.
VdcReport vdc_check(const std::vector<std::vector<double>>& vectors, double eps, std::size_t i_max, std::size_t j);

struct PatternHit {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    bool operator==(const PatternHit&) const = default;
};

/// Every (n, m) in [1, n_max] x [1, m_max], in lexicographic order, with
/// n a_i + m b_i + f_i a member of sequence i for every coordinate i.
/// `sequences` holds one spec per coordinate or a single shared spec.
std::vector<PatternHit> search_pattern(const std::vector<SequenceSpec>& sequences, const std::vector<std::int64_t>& a,
                                       const std::vector<std::int64_t>& b, const std::vector<std::int64_t>& f,
                                       std::uint64_t n_max, std::uint64_t m_max, bool first_only = false);

/// For c = 1..c_max: whether some n <= N - c has n and n + c both members.
std::vector<bool> difference_covers(const BitWindow& w, std::uint64_t c_max, std::uint64_t n);
std::vector<bool> difference_covers(const SequenceSpec& spec, std::uint64_t c_max, std::uint64_t n);

} // namespace wmlab::stats
