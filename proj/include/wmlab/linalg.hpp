#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wmlab {

using Integer = boost::multiprecision::cpp_int;
// Always canonical: gcd(|num|, den) = 1 and den >= 1.
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;
using RationalPair = std::array<Rational, 2>;
using IndexPair = std::pair<std::size_t, std::size_t>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    /// Throws InputError if the rows are ragged.
    static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    RationalVector row_vector(std::size_t r) const;
    RationalVector column(std::size_t c) const;

    RationalMatrix transposed() const;
    void append_row(std::span<const Rational> row);
    void swap_rows(std::size_t a, std::size_t b);

    /// Matrix-vector product; throws InputError on dimension mismatch.
    RationalVector operator*(std::span<const Rational> x) const;

    bool operator==(const RationalMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RrefResult {
    RationalMatrix reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

RrefResult rref(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

/// Basis of {x : m x = 0}. The basis matrix is in reduced row-echelon form and
/// each vector is scaled to a primitive integer vector whose last nonzero
/// entry is positive.
std::vector<RationalVector> kernel_basis(const RationalMatrix& m);

/// Canonical particular solution of m x = d (free variables pinned to 0), or
/// nullopt when the system is inconsistent.
std::optional<RationalVector> solve_rational(const RationalMatrix& m, std::span<const Rational> d);

/// Integer solution of m f = d with f_i = f_j for every listed pair, or
/// nullopt when none exists. Decided through a column Hermite normal form
/// m U = H; free parameters of the triangular solve are pinned to 0.
std::optional<RationalVector> solve_integer(const RationalMatrix& m, std::span<const Rational> d,
                                            std::span<const IndexPair> equal_pairs = {});

Rational det2(const RationalPair& p, const RationalPair& q);

/// True iff v is in the column span of the given vectors.
bool in_span(const std::vector<RationalVector>& vectors, std::span<const Rational> v);

bool is_integral(std::span<const Rational> v);
bool is_zero(std::span<const Rational> v);
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const Integer& x) { return x.is_zero(); }

/// Scale v by a positive rational so it becomes an integer vector with
/// content 1. The zero vector is returned unchanged.
RationalVector primitive(std::span<const Rational> v);

/// Lexicographic comparison by value.
bool lex_less(std::span<const Rational> a, std::span<const Rational> b);

RationalVector add(std::span<const Rational> a, std::span<const Rational> b);
RationalVector scaled(std::span<const Rational> a, const Rational& s);

/// "p/q", or "p" when q = 1; the sign lives on the numerator.
std::string to_string(const Rational& r);

/// Parses "p", "-p", "p/q", "-p/q". Throws InputError on anything else,
/// including a zero denominator.
Rational parse_rational(std::string_view text);

} // namespace wmlab
