#pragma once

#include <optional>
#include <vector>

#include "wmlab/linalg.hpp"

namespace wmlab {

/// Largest column count accepted by the columns-condition search.
inline constexpr std::size_t kMaxRadoColumns = 16;

/// Ordered blocks I_1..I_l of column indices witnessing the columns
/// condition.
struct LevelPartition {
    std::vector<std::vector<std::size_t>> blocks;
    /// coefficients[r-1][j] = c_j^r for r = 1..l-1: the column sum over
    /// blocks[r] equals sum_j coefficients[r-1][j] * col_j, with support on
    /// the union of blocks[0..r-1].
    std::vector<RationalVector> coefficients;

    std::size_t level() const noexcept { return blocks.size(); }
};

/// Depth-first search over nonempty subsets in increasing bitmask order.
/// Returns the first level partition found, or nullopt. Throws InputError
/// when the matrix has more than kMaxRadoColumns columns.
std::optional<LevelPartition> columns_condition(const RationalMatrix& m);

/// Exact check of the level-partition identities against m.
bool check_level_partition(const RationalMatrix& m, const LevelPartition& p);

/// Partition regularity of m x = rhs: homogeneous and columns condition.
bool decide_rado(const RationalMatrix& m, std::span<const Rational> rhs);

} // namespace wmlab
