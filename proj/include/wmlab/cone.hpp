#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "wmlab/linalg.hpp"

namespace wmlab {

/// Largest ambient dimension accepted by the double-description routine.
inline constexpr std::size_t kMaxConeDim = 12;

/// The polyhedral cone W = U ∩ (Q>=0)^k of a subspace U.
struct Cone {
    std::size_t ambient_dim = 0;
    /// Extreme-ray representatives: primitive, nonnegative integer vectors in
    /// lexicographic order.
    std::vector<RationalVector> generators;
    /// Reduced row-echelon basis of Span(generators).
    std::vector<RationalVector> span_basis;

    bool trivial() const noexcept { return generators.empty(); }
};

/// Maximal coordinate classes on which the cone projects to a line.
struct CoordinatePartition {
    /// Disjoint, covering {0..k-1}; each class sorted, classes ordered by
    /// their smallest member.
    std::vector<std::vector<std::size_t>> classes;
    /// ratios[r][t] = w_{classes[r][t]} / w_{classes[r][0]} for every w in
    /// the cone.
    std::vector<RationalVector> ratios;
    std::vector<bool> diagonal;

    std::size_t class_of(std::size_t coord) const;
};

/// Extreme rays of span(subspace_basis) ∩ (Q>=0)^k by incremental double
/// description with an explicit lineality space. Throws InputError when
/// k > kMaxConeDim or a basis vector has the wrong dimension.
Cone nonneg_intersection(const std::vector<RationalVector>& subspace_basis, std::size_t k);

/// Sum of the generators when it is strictly positive, else nullopt.
std::optional<RationalVector> strictly_positive_witness(const Cone& c);

/// dim Span Proj_{(i,j)} W, computed from the generators.
std::size_t pairwise_projection_dim(const Cone& c, std::size_t i, std::size_t j);

/// Equivalence classes of i ~ j <=> pairwise_projection_dim(c, i, j) <= 1.
/// Requires a strictly positive witness (InputError otherwise); a failure of
/// transitivity or maximality raises InternalError.
CoordinatePartition coordinate_partition(const Cone& c);

} // namespace wmlab
