#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "wmlab/bit_window.hpp"
#include "wmlab/cone.hpp"
#include "wmlab/decision.hpp"
#include "wmlab/rado.hpp"
#include "wmlab/sequence.hpp"

namespace wmlab::io {

/// std::map-backed, so keys always serialize sorted.
using Json = nlohmann::json;

/// Parses JSON text; syntax errors become InputError with "line L, column C".
Json parse_json(std::string_view text, const std::string& origin = "<input>");
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Pretty form used for reports (2-space indent, trailing newline).
std::string dump_pretty(const Json& j);
/// Single-line form used for JSON-lines records.
std::string dump_line(const Json& j);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json to_json(const RationalVector& v);
RationalVector vector_from_json(const Json& j);

/// {"k", "matrix", "rhs"} with rational strings (plain JSON integers are
/// accepted too).
AffineSubspace system_from_json(const Json& j);
AffineSubspace parse_system_file(const std::filesystem::path& path);
Json to_json(const AffineSubspace& s);

/// {"k", "generators"}.
Json to_json(const Cone& c);
/// {"classes", "diagonal", "ratios"}.
Json to_json(const CoordinatePartition& p);

/// {"a", "b", "f", "classes"}.
Json to_json(const Certificate& c);
/// Classes are read back; ratios and diagonal flags are not part of the
/// file and are left empty.
Certificate certificate_from_json(const Json& j);

Json to_json(const Obstruction& o);
Json to_json(const DecisionReport& r);

/// {"level", "blocks", "coefficients"}.
Json to_json(const LevelPartition& p);

Json to_json(const seq::SequenceSpec& spec);
seq::SequenceSpec spec_from_json(const Json& j);

/// Writes `path` (binary) and `path`.json (sidecar with the sequence spec, start and
/// length).
void write_window(const std::filesystem::path& path, const seq::BitWindow& w);
/// Reads `path` and, when present, its sidecar; a sidecar that disagrees
/// with the binary header is an InputError.
seq::BitWindow read_window(const std::filesystem::path& path);

/// {"query": query, "value": name, "exact": "p/q", "float": double}.
Json stat_record(const Json& query, std::string_view name, const Rational& value);

} // namespace wmlab::io
