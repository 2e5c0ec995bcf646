#include "wmlab/rado.hpp"

#include <cstdint>
#include <unordered_set>

#include "wmlab/errors.hpp"

namespace wmlab {

namespace mp = boost::multiprecision;

namespace {

using Mask = std::uint32_t;

// Row-reduced basis of a span in Q^p with membership by elimination.
class SpanTester {
public:
    void add(RationalVector v) {
        reduce(v);
        const auto piv = leading(v);
        if (piv == v.size())
            return;
        const Rational inv = 1 / v[piv];
        for (auto& x : v)
            x *= inv;
        for (auto& [p, row] : rows_)
            if (!is_zero(row[piv]))
                row = wmlab::add(row, scaled(v, -row[piv]));
        rows_.emplace_back(piv, std::move(v));
    }

    bool contains(RationalVector v) const {
        reduce(v);
        return is_zero(v);
    }

private:
    static std::size_t leading(const RationalVector& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!is_zero(v[i]))
                return i;
        return v.size();
    }

    void reduce(RationalVector& v) const {
        for (const auto& [p, row] : rows_)
            if (!is_zero(v[p]))
                v = wmlab::add(v, scaled(row, -v[p]));
    }

    std::vector<std::pair<std::size_t, RationalVector>> rows_;
};

struct Search {
    const RationalMatrix& m;
    std::vector<RationalVector> cols;
    Mask full = 0;
    std::unordered_set<Mask> dead;
    std::vector<Mask> blocks;

    RationalVector sum(Mask s) const {
        RationalVector out(m.rows());
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (s & (Mask{1} << j))
                out = add(out, cols[j]);
        return out;
    }

    bool run(Mask used) {
        if (used == full)
            return true;
        if (dead.contains(used))
            return false;
        SpanTester span;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (used & (Mask{1} << j))
                span.add(cols[j]);
        const Mask rem = full & ~used;
        // Submasks of rem in increasing numeric order.
        for (Mask sub = 0;;) {
            sub = (sub - rem) & rem;
            if (sub == 0)
                break;
            const auto s = sum(sub);
            const bool ok = used == 0 ? is_zero(s) : span.contains(s);
            if (!ok)
                continue;
            blocks.push_back(sub);
            if (run(used | sub))
                return true;
            blocks.pop_back();
        }
        dead.insert(used);
        return false;
    }
};

std::vector<std::size_t> members(Mask s, std::size_t q) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < q; ++j)
        if (s & (Mask{1} << j))
            out.push_back(j);
    return out;
}

} // namespace

std::optional<LevelPartition> columns_condition(const RationalMatrix& m) {
    const std::size_t q = m.cols();
    if (q > kMaxRadoColumns)
        throw InputError("columns condition supports at most " + std::to_string(kMaxRadoColumns) + " columns, got " +
                         std::to_string(q));
    if (q == 0)
        return std::nullopt;

    Search search{m, {}, (Mask{1} << q) - 1, {}, {}};
    for (std::size_t j = 0; j < q; ++j)
        search.cols.push_back(m.column(j));
    if (!search.run(0))
        return std::nullopt;

    LevelPartition out;
    Mask used = 0;
    for (Mask blk : search.blocks) {
        out.blocks.push_back(members(blk, q));
        if (used != 0) {
            const auto idx = members(used, q);
            RationalMatrix basis(m.rows(), idx.size());
            for (std::size_t r = 0; r < m.rows(); ++r)
                for (std::size_t t = 0; t < idx.size(); ++t)
                    basis(r, t) = m(r, idx[t]);
            const auto coeff = solve_rational(basis, search.sum(blk));
            if (!coeff)
                throw InternalError("level block sum left the span of earlier blocks");
            RationalVector full_coeff(q);
            for (std::size_t t = 0; t < idx.size(); ++t)
                full_coeff[idx[t]] = (*coeff)[t];
            out.coefficients.push_back(std::move(full_coeff));
        }
        used |= blk;
    }
    return out;
}

bool check_level_partition(const RationalMatrix& m, const LevelPartition& p) {
    const std::size_t q = m.cols();
    if (p.blocks.empty() || p.coefficients.size() + 1 != p.blocks.size())
        return false;
    std::vector<int> seen(q, 0);
    for (const auto& blk : p.blocks) {
        if (blk.empty())
            return false;
        for (auto j : blk) {
            if (j >= q)
                return false;
            ++seen[j];
        }
    }
    for (int s : seen)
        if (s != 1)
            return false;

    std::vector<bool> before(q, false);
    for (std::size_t r = 0; r < p.blocks.size(); ++r) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Rational lhs = 0;
            for (auto j : p.blocks[r])
                lhs += m(i, j);
            Rational rhs = 0;
            if (r > 0) {
                const auto& c = p.coefficients[r - 1];
                if (c.size() != q)
                    return false;
                for (std::size_t j = 0; j < q; ++j) {
                    if (is_zero(c[j]))
                        continue;
                    if (!before[j])
                        return false;
                    rhs += c[j] * m(i, j);
                }
            }
            if (lhs != rhs)
                return false;
        }
        for (auto j : p.blocks[r])
            before[j] = true;
    }
    return true;
}

bool decide_rado(const RationalMatrix& m, std::span<const Rational> rhs) {
    if (rhs.size() != m.rows())
        throw InputError("rhs length does not match the number of rows");
    if (!is_zero(rhs))
        return false;
    return columns_condition(m).has_value();
}

} // namespace wmlab
