#include "wmlab/cone.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "wmlab/errors.hpp"

namespace wmlab {

namespace mp = boost::multiprecision;

std::size_t CoordinatePartition::class_of(std::size_t coord) const {
    for (std::size_t r = 0; r < classes.size(); ++r)
        if (std::find(classes[r].begin(), classes[r].end(), coord) != classes[r].end())
            return r;
    throw InputError("coordinate " + std::to_string(coord) + " not covered by the partition");
}

namespace {

using Mask = std::uint32_t;

// Processed coordinates (bits < upto) on which v vanishes.
Mask zero_set(const RationalVector& v, std::size_t upto) {
    Mask m = 0;
    for (std::size_t j = 0; j < upto; ++j)
        if (is_zero(v[j]))
            m |= Mask{1} << j;
    return m;
}

} // namespace

Cone nonneg_intersection(const std::vector<RationalVector>& subspace_basis, std::size_t k) {
    if (k > kMaxConeDim)
        throw InputError("cone dimension " + std::to_string(k) + " exceeds the supported maximum of " +
                         std::to_string(kMaxConeDim));
    for (const auto& v : subspace_basis)
        if (v.size() != k)
            throw InputError("subspace basis vector has dimension " + std::to_string(v.size()) +
                             ", expected " + std::to_string(k));

    Cone cone;
    cone.ambient_dim = k;

    std::vector<RationalVector> lineality;
    if (!subspace_basis.empty()) {
        const auto r = rref(RationalMatrix::from_rows(subspace_basis));
        for (std::size_t i = 0; i < r.rank; ++i)
            lineality.push_back(r.reduced.row_vector(i));
    }
    std::vector<RationalVector> rays;

    // Invariant after processing coordinates 0..i-1: the current cone is
    // span(lineality) + cone(rays), every lineality vector vanishes on the
    // processed coordinates, and rays is a minimal generating set modulo the
    // lineality space.
    for (std::size_t i = 0; i < k; ++i) {
        auto lit = std::find_if(lineality.begin(), lineality.end(),
                                [i](const RationalVector& l) { return !is_zero(l[i]); });
        if (lit != lineality.end()) {
            RationalVector l = std::move(*lit);
            lineality.erase(lit);
            if (l[i] < 0)
                l = scaled(l, Rational(-1));
            for (auto& other : lineality)
                if (!is_zero(other[i]))
                    other = add(other, scaled(l, -other[i] / l[i]));
            for (auto& ray : rays)
                if (!is_zero(ray[i]))
                    ray = primitive(add(ray, scaled(l, -ray[i] / l[i])));
            rays.push_back(primitive(l));
            continue;
        }

        std::vector<std::size_t> pos, neg;
        std::vector<RationalVector> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            const int s = rays[r][i].sign();
            if (s > 0)
                pos.push_back(r);
            else if (s < 0)
                neg.push_back(r);
            else
                next.push_back(rays[r]);
        }
        for (auto r : pos)
            next.push_back(rays[r]);
        if (!neg.empty() && !pos.empty()) {
            std::vector<Mask> zeros(rays.size());
            for (std::size_t r = 0; r < rays.size(); ++r)
                zeros[r] = zero_set(rays[r], i);
            for (auto p : pos) {
                for (auto n : neg) {
                    const Mask common = zeros[p] & zeros[n];
                    bool adjacent = true;
                    for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                        if (r != p && r != n && (zeros[r] & common) == common)
                            adjacent = false;
                    if (!adjacent)
                        continue;
                    // rays[p][i] > 0 > rays[n][i]; the combination vanishes at i.
                    auto w = add(scaled(rays[n], rays[p][i]), scaled(rays[p], -rays[n][i]));
                    next.push_back(primitive(w));
                }
            }
        }
        rays = std::move(next);
    }
    if (!lineality.empty())
        throw InternalError("lineality space survived intersection with the orthant");

    std::sort(rays.begin(), rays.end(), [](const auto& a, const auto& b) { return lex_less(a, b); });
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    cone.generators = std::move(rays);
    if (!cone.generators.empty()) {
        const auto r = rref(RationalMatrix::from_rows(cone.generators));
        for (std::size_t i = 0; i < r.rank; ++i)
            cone.span_basis.push_back(r.reduced.row_vector(i));
    }
    return cone;
}

std::optional<RationalVector> strictly_positive_witness(const Cone& c) {
    if (c.generators.empty())
        return std::nullopt;
    RationalVector sum(c.ambient_dim);
    for (const auto& g : c.generators)
        sum = add(sum, g);
    if (std::all_of(sum.begin(), sum.end(), [](const Rational& x) { return x > 0; }))
        return sum;
    return std::nullopt;
}

std::size_t pairwise_projection_dim(const Cone& c, std::size_t i, std::size_t j) {
    if (i >= c.ambient_dim || j >= c.ambient_dim)
        throw InputError("coordinate index out of range");
    if (i == j)
        throw InputError("pairwise projection needs two distinct coordinates");
    RationalMatrix m(2, c.generators.size());
    for (std::size_t g = 0; g < c.generators.size(); ++g) {
        m(0, g) = c.generators[g][i];
        m(1, g) = c.generators[g][j];
    }
    return rank(m);
}

CoordinatePartition coordinate_partition(const Cone& c) {
    const auto witness = strictly_positive_witness(c);
    if (!witness)
        throw InputError("coordinate partition requires a strictly positive vector in the cone");
    const std::size_t k = c.ambient_dim;

    std::vector<std::vector<std::size_t>> dims(k, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            dims[i][j] = dims[j][i] = pairwise_projection_dim(c, i, j);

    CoordinatePartition part;
    std::vector<bool> assigned(k, false);
    for (std::size_t i = 0; i < k; ++i) {
        if (assigned[i])
            continue;
        std::vector<std::size_t> cls{i};
        assigned[i] = true;
        for (std::size_t j = i + 1; j < k; ++j)
            if (!assigned[j] && dims[i][j] <= 1) {
                cls.push_back(j);
                assigned[j] = true;
            }
        part.classes.push_back(std::move(cls));
    }

    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const bool same = part.class_of(i) == part.class_of(j);
            if (same != (dims[i][j] <= 1))
                throw InternalError("TransitivityViolation: coordinates " + std::to_string(i) + " and " +
                                    std::to_string(j));
        }

    for (const auto& cls : part.classes) {
        RationalVector ratios;
        bool diag = true;
        const Rational& base = (*witness)[cls.front()];
        for (auto idx : cls) {
            ratios.push_back((*witness)[idx] / base);
            if (ratios.back() != 1)
                diag = false;
        }
        // Every generator must share the class ratios, not just the witness.
        for (const auto& g : c.generators)
            for (std::size_t t = 0; t < cls.size(); ++t)
                if (g[cls[t]] != ratios[t] * g[cls.front()])
                    throw InternalError("generator breaks the proportionality of its coordinate class");
        part.ratios.push_back(std::move(ratios));
        part.diagonal.push_back(diag);
    }
    return part;
}

} // namespace wmlab
