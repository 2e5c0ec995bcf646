#include "wmlab/linalg.hpp"

#include <algorithm>
#include <cctype>

#include "wmlab/errors.hpp"

namespace wmlab {

namespace mp = boost::multiprecision;

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
    RationalMatrix m;
    if (rows.empty())
        return m;
    m.cols_ = rows.front().size();
    for (const auto& r : rows)
        m.append_row(r);
    return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RationalVector RationalMatrix::row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
}

RationalVector RationalMatrix::column(std::size_t c) const {
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

RationalMatrix RationalMatrix::transposed() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

void RationalMatrix::append_row(std::span<const Rational> row) {
    if (rows_ == 0 && data_.empty() && cols_ == 0)
        cols_ = row.size();
    if (row.size() != cols_)
        throw InputError("ragged matrix: row of length " + std::to_string(row.size()) +
                         ", expected " + std::to_string(cols_));
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

void RationalMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_,
                     data_.begin() + b * cols_);
}

RationalVector RationalMatrix::operator*(std::span<const Rational> x) const {
    if (x.size() != cols_)
        throw InputError("dimension mismatch in matrix-vector product");
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational acc = 0;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_zero((*this)(r, c)))
                acc += (*this)(r, c) * x[c];
        out[r] = std::move(acc);
    }
    return out;
}

RrefResult rref(const RationalMatrix& m) {
    RrefResult res{m, {}, 0};
    RationalMatrix& a = res.reduced;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < a.cols() && lead < a.rows(); ++c) {
        std::size_t piv = lead;
        while (piv < a.rows() && is_zero(a(piv, c)))
            ++piv;
        if (piv == a.rows())
            continue;
        a.swap_rows(piv, lead);
        const Rational inv = 1 / a(lead, c);
        for (std::size_t j = c; j < a.cols(); ++j)
            a(lead, j) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == lead || is_zero(a(r, c)))
                continue;
            const Rational f = a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (!is_zero(a(lead, j)))
                    a(r, j) -= f * a(lead, j);
        }
        res.pivot_cols.push_back(c);
        ++lead;
    }
    res.rank = res.pivot_cols.size();
    return res;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).rank; }

namespace {

// Flip so the last nonzero entry is positive.
void orient_last_positive(RationalVector& v) {
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
        if (is_zero(*it))
            continue;
        if (*it < 0)
            for (auto& x : v)
                x = -x;
        return;
    }
}

} // namespace

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) {
    const auto r = rref(m);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : r.pivot_cols)
        is_pivot[p] = true;

    RationalMatrix raw(0, n);
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free])
            continue;
        RationalVector v(n);
        v[free] = 1;
        for (std::size_t i = 0; i < r.rank; ++i)
            v[r.pivot_cols[i]] = -r.reduced(i, free);
        raw.append_row(v);
    }
    if (raw.rows() == 0)
        return {};

    const auto canon = rref(raw);
    std::vector<RationalVector> basis;
    for (std::size_t i = 0; i < canon.rank; ++i) {
        auto v = primitive(canon.reduced.row(i));
        orient_last_positive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RationalVector> solve_rational(const RationalMatrix& m, std::span<const Rational> d) {
    if (d.size() != m.rows())
        throw InputError("dimension mismatch: rhs has " + std::to_string(d.size()) +
                         " entries, matrix has " + std::to_string(m.rows()) + " rows");
    RationalMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            aug(r, c) = m(r, c);
        aug(r, m.cols()) = d[r];
    }
    const auto red = rref(aug);
    if (!red.pivot_cols.empty() && red.pivot_cols.back() == m.cols())
        return std::nullopt;
    RationalVector x(m.cols());
    for (std::size_t i = 0; i < red.rank; ++i)
        x[red.pivot_cols[i]] = red.reduced(i, m.cols());
    return x;
}

namespace {

using IntMatrix = std::vector<std::vector<Integer>>;

// s*a + t*b = g >= 0
void ext_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
    Integer old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
    while (!is_zero(r)) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = std::move(r);
        r = std::move(tmp);
        tmp = old_s - q * s1;
        old_s = std::move(s1);
        s1 = std::move(tmp);
        tmp = old_t - q * t1;
        old_t = std::move(t1);
        t1 = std::move(tmp);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    s = old_s;
    t = old_t;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

} // namespace

std::optional<RationalVector> solve_integer(const RationalMatrix& m, std::span<const Rational> d,
                                            std::span<const IndexPair> equal_pairs) {
    if (d.size() != m.rows())
        throw InputError("dimension mismatch: rhs has " + std::to_string(d.size()) +
                         " entries, matrix has " + std::to_string(m.rows()) + " rows");
    const std::size_t k = m.cols();
    for (const auto& [i, j] : equal_pairs)
        if (i >= k || j >= k)
            throw InputError("equality pair index out of range");

    // Integer system: each row scaled by the lcm of its denominators.
    IntMatrix a;
    std::vector<Integer> rhs;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Integer l = mp::denominator(d[r]);
        for (std::size_t c = 0; c < k; ++c)
            l = mp::lcm(l, Integer(mp::denominator(m(r, c))));
        std::vector<Integer> row(k);
        for (std::size_t c = 0; c < k; ++c)
            row[c] = mp::numerator(m(r, c)) * (l / mp::denominator(m(r, c)));
        a.push_back(std::move(row));
        rhs.push_back(mp::numerator(d[r]) * (l / mp::denominator(d[r])));
    }
    for (const auto& [i, j] : equal_pairs) {
        std::vector<Integer> row(k);
        row[i] += 1;
        row[j] -= 1;
        a.push_back(std::move(row));
        rhs.emplace_back(0);
    }

    // Column operations a <- a U, tracked in u, until a is lower echelon.
    IntMatrix u(k, std::vector<Integer>(k));
    for (std::size_t i = 0; i < k; ++i)
        u[i][i] = 1;
    auto col_combine = [&](std::size_t c1, std::size_t c2, const Integer& s, const Integer& t,
                           const Integer& x, const Integer& y) {
        // c1 <- s*c1 + t*c2 ; c2 <- x*c2 - y*c1   (s*x + t*y = 1)
        auto apply = [&](IntMatrix& mat) {
            for (auto& row : mat) {
                Integer v1 = s * row[c1] + t * row[c2];
                Integer v2 = x * row[c2] - y * row[c1];
                row[c1] = std::move(v1);
                row[c2] = std::move(v2);
            }
        };
        apply(a);
        apply(u);
    };
    auto col_swap = [&](std::size_t c1, std::size_t c2) {
        for (auto& row : a)
            std::swap(row[c1], row[c2]);
        for (auto& row : u)
            std::swap(row[c1], row[c2]);
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& f) {
        // dst <- dst - f*src
        for (auto& row : a)
            row[dst] -= f * row[src];
        for (auto& row : u)
            row[dst] -= f * row[src];
    };

    std::vector<std::optional<std::size_t>> pivot_of_row(a.size());
    std::size_t col = 0;
    for (std::size_t i = 0; i < a.size() && col < k; ++i) {
        for (std::size_t j = col + 1; j < k; ++j) {
            if (is_zero(a[i][j]))
                continue;
            if (is_zero(a[i][col])) {
                col_swap(col, j);
                continue;
            }
            const Integer p = a[i][col], q = a[i][j];
            if (q % p == 0) {
                col_axpy(j, col, q / p);
                continue;
            }
            Integer g, s, t;
            ext_gcd(p, q, g, s, t);
            col_combine(col, j, s, t, p / g, q / g);
        }
        if (is_zero(a[i][col]))
            continue;
        if (a[i][col] < 0) {
            for (auto& row : a)
                row[col] = -row[col];
            for (auto& row : u)
                row[col] = -row[col];
        }
        // Hermite reduction of the entries left of the pivot.
        for (std::size_t c = 0; c < col; ++c)
            if (!is_zero(a[i][c]))
                col_axpy(c, col, floor_div(a[i][c], a[i][col]));
        pivot_of_row[i] = col;
        ++col;
    }

    std::vector<Integer> y(k);
    for (std::size_t i = 0; i < a.size(); ++i) {
        Integer res = rhs[i];
        for (std::size_t c = 0; c < k; ++c)
            if (!is_zero(a[i][c]) && !is_zero(y[c]))
                res -= a[i][c] * y[c];
        if (pivot_of_row[i]) {
            const std::size_t c = *pivot_of_row[i];
            // y[c] is still 0 here, so res already excludes the pivot term.
            if (res % a[i][c] != 0)
                return std::nullopt;
            y[c] = res / a[i][c];
        } else if (!is_zero(res)) {
            return std::nullopt;
        }
    }

    RationalVector f(k);
    for (std::size_t r = 0; r < k; ++r) {
        Integer acc = 0;
        for (std::size_t c = 0; c < k; ++c)
            acc += u[r][c] * y[c];
        f[r] = Rational(acc);
    }
    return f;
}

Rational det2(const RationalPair& p, const RationalPair& q) { return p[0] * q[1] - p[1] * q[0]; }

bool in_span(const std::vector<RationalVector>& vectors, std::span<const Rational> v) {
    if (is_zero(v))
        return true;
    if (vectors.empty())
        return false;
    RationalMatrix m = RationalMatrix::from_rows(vectors);
    const std::size_t before = rank(m);
    m.append_row(v);
    return rank(m) == before;
}

bool is_integral(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return mp::denominator(x) == 1; });
}

bool is_zero(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_zero(x); });
}

RationalVector primitive(std::span<const Rational> v) {
    Integer l = 1;
    for (const auto& x : v)
        l = mp::lcm(l, Integer(mp::denominator(x)));
    Integer g = 0;
    std::vector<Integer> ints;
    ints.reserve(v.size());
    for (const auto& x : v) {
        ints.push_back(mp::numerator(x) * (l / mp::denominator(x)));
        g = mp::gcd(g, Integer(mp::abs(ints.back())));
    }
    RationalVector out(v.size());
    if (is_zero(g))
        return out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = Rational(ints[i] / g);
    return out;
}

bool lex_less(std::span<const Rational> a, std::span<const Rational> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

RationalVector add(std::span<const Rational> a, std::span<const Rational> b) {
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

RationalVector scaled(std::span<const Rational> a, const Rational& s) {
    RationalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] * s;
    return out;
}

std::string to_string(const Rational& r) {
    if (mp::denominator(r) == 1)
        return mp::numerator(r).str();
    return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational { throw InputError("malformed rational \"" + std::string(text) + "\""); };
    auto digits = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
    };
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    if (!digits(num))
        return fail();
    Integer p{std::string(num)};
    Integer q = 1;
    if (slash != std::string_view::npos) {
        const std::string_view den = body.substr(slash + 1);
        if (!digits(den))
            return fail();
        q = Integer(std::string(den));
        if (is_zero(q))
            throw InputError("zero denominator in \"" + std::string(text) + "\"");
    }
    if (negative)
        p = -p;
    return Rational(p, q);
}

} // namespace wmlab
