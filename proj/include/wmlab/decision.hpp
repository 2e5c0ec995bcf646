#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "wmlab/cone.hpp"
#include "wmlab/linalg.hpp"

namespace wmlab {

/// The affine subspace {x in Q^k : matrix x = rhs}.
struct AffineSubspace {
    std::size_t k = 0;
    RationalMatrix matrix;
    RationalVector rhs;

    /// Throws InputError unless matrix is p x k and rhs has p entries.
    void validate() const;
    bool contains(std::span<const Rational> x) const;
};

enum class Mode { WM, Normal };

std::string_view to_string(Mode m);
/// Accepts "wm" / "normal" (case-insensitive).
Mode parse_mode(std::string_view text);

/// Witness that {n a + m b + f : n, m >= 1} lies in the subspace and meets
/// the class conditions.
struct Certificate {
    RationalVector a;
    RationalVector b;
    RationalVector f;
    CoordinatePartition partition;
};

enum class ObstructionKind {
    EmptySubspace,
    NoIntegerPoint,
    TrivialCone,
    NoPositiveVector,
    NonDiagonalClass,
    NoClassConstantShift,
};

std::string_view to_string(ObstructionKind k);

struct Obstruction {
    ObstructionKind kind = ObstructionKind::EmptySubspace;
    // NonDiagonalClass only: coordinates i < j of one class with
    // w_i = ratio * w_j on the whole cone.
    std::size_t i = 0;
    std::size_t j = 0;
    Rational ratio;
};

enum class Answer { Yes, No };

struct DecisionReport {
    Answer answer = Answer::No;
    Mode mode = Mode::WM;
    std::optional<Certificate> certificate;
    std::optional<Obstruction> obstruction;
    std::string note;
};

struct VerifyResult {
    bool ok = false;
    std::string reason;
    explicit operator bool() const noexcept { return ok; }
};

/// Exact check of every certificate condition; independent of decide().
/// Throws InputError when dimensions disagree.
VerifyResult verify_certificate(const AffineSubspace& s, const Certificate& c, Mode mode);

/// Direction pair (a, b) in the cone satisfying the cross-class determinant
/// condition. Requires a strictly positive witness and diagonal multi-member
/// classes (InputError otherwise).
std::pair<RationalVector, RationalVector> find_direction_pair(const Cone& c, const CoordinatePartition& p);

/// Decides whether the subspace meets A^k for every WM set (Mode::WM) or
/// every normal set (Mode::Normal). YES answers carry a verified
/// certificate; NO answers carry the structural obstruction.
DecisionReport decide(const AffineSubspace& s, Mode mode);

} // namespace wmlab
