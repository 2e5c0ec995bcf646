#include "wmlab/io.hpp"

#include <fstream>
#include <sstream>

#include "wmlab/errors.hpp"

namespace wmlab::io {

namespace {

std::string position(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object())
        throw InputError(std::string("expected a JSON object with key \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end())
        throw InputError(std::string("missing key \"") + key + "\"");
    return *it;
}

template <typename T> T integer_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer())
        throw InputError(std::string("key \"") + key + "\" must be an integer");
    if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned())
            return v.get<T>();
        if (v.get<std::int64_t>() < 0)
            throw InputError(std::string("key \"") + key + "\" must be nonnegative");
    }
    return v.get<T>();
}

template <typename T> T integer_field_or(const Json& j, const char* key, T fallback) {
    return j.contains(key) ? integer_field<T>(j, key) : fallback;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json index_lists(const std::vector<std::vector<std::size_t>>& lists) {
    Json out = Json::array();
    for (const auto& l : lists)
        out.push_back(l);
    return out;
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    auto side = path;
    side += ".json";
    return side;
}

} // namespace

Json parse_json(std::string_view text, const std::string& origin) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        // e.byte is 1-based and points just past the offending character.
        const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
        throw InputError(origin + ": malformed JSON at " + position(text, at));
    }
}

Json read_json_file(const std::filesystem::path& path) { return parse_json(read_file(path), path.string()); }

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw InputError("cannot write " + path.string());
}

std::string dump_pretty(const Json& j) { return j.dump(2) + "\n"; }
std::string dump_line(const Json& j) { return j.dump(); }

// ---------------------------------------------------------------------------

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_unsigned())
        return Rational(Integer(j.get<std::uint64_t>()));
    if (j.is_number_integer())
        return Rational(Integer(j.get<std::int64_t>()));
    throw InputError("expected a rational string \"p/q\" or an integer, got " + j.dump());
}

Json to_json(const RationalVector& v) {
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_json(x));
    return out;
}

RationalVector vector_from_json(const Json& j) {
    if (!j.is_array())
        throw InputError("expected an array of rationals, got " + j.dump());
    RationalVector out;
    out.reserve(j.size());
    for (const auto& x : j)
        out.push_back(rational_from_json(x));
    return out;
}

// ---------------------------------------------------------------------------

AffineSubspace system_from_json(const Json& j) {
    AffineSubspace s;
    const auto k = integer_field<std::int64_t>(j, "k");
    if (k <= 0)
        throw InputError("k must be positive");
    s.k = static_cast<std::size_t>(k);
    const Json& rows = field(j, "matrix");
    if (!rows.is_array())
        throw InputError("\"matrix\" must be an array of rows");
    std::vector<RationalVector> parsed;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        auto row = vector_from_json(rows[r]);
        if (row.size() != s.k)
            throw InputError("matrix row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                             " entries, expected k = " + std::to_string(s.k));
        parsed.push_back(std::move(row));
    }
    s.matrix = parsed.empty() ? RationalMatrix(0, s.k) : RationalMatrix::from_rows(parsed);
    s.rhs = j.contains("rhs") ? vector_from_json(j.at("rhs")) : RationalVector(parsed.size());
    s.validate();
    return s;
}

AffineSubspace parse_system_file(const std::filesystem::path& path) {
    return system_from_json(read_json_file(path));
}

Json to_json(const AffineSubspace& s) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < s.matrix.rows(); ++r)
        rows.push_back(to_json(s.matrix.row_vector(r)));
    return Json{{"k", s.k}, {"matrix", rows}, {"rhs", to_json(s.rhs)}};
}

Json to_json(const Cone& c) {
    Json gens = Json::array();
    for (const auto& g : c.generators)
        gens.push_back(to_json(g));
    return Json{{"k", c.ambient_dim}, {"generators", gens}};
}

Json to_json(const CoordinatePartition& p) {
    Json ratios = Json::array();
    for (const auto& r : p.ratios)
        ratios.push_back(to_json(r));
    Json diag = Json::array();
    for (bool d : p.diagonal)
        diag.push_back(d);
    return Json{{"classes", index_lists(p.classes)}, {"diagonal", diag}, {"ratios", ratios}};
}

Json to_json(const Certificate& c) {
    return Json{{"a", to_json(c.a)}, {"b", to_json(c.b)}, {"f", to_json(c.f)},
                {"classes", index_lists(c.partition.classes)}};
}

Certificate certificate_from_json(const Json& j) {
    Certificate c;
    c.a = vector_from_json(field(j, "a"));
    c.b = vector_from_json(field(j, "b"));
    c.f = j.contains("f") ? vector_from_json(j.at("f")) : RationalVector(c.a.size());
    if (c.b.size() != c.a.size() || c.f.size() != c.a.size())
        throw InputError("certificate vectors a, b, f must have equal length");
    if (j.contains("classes")) {
        const Json& cls = j.at("classes");
        if (!cls.is_array())
            throw InputError("\"classes\" must be an array of index arrays");
        for (const auto& one : cls) {
            if (!one.is_array())
                throw InputError("\"classes\" must be an array of index arrays");
            std::vector<std::size_t> members;
            for (const auto& idx : one) {
                if (!idx.is_number_unsigned())
                    throw InputError("class members must be nonnegative integers");
                members.push_back(idx.get<std::size_t>());
            }
            c.partition.classes.push_back(std::move(members));
        }
    } else {
        for (std::size_t i = 0; i < c.a.size(); ++i)
            c.partition.classes.push_back({i});
    }
    return c;
}

Json to_json(const Obstruction& o) {
    Json out{{"kind", std::string(to_string(o.kind))}};
    if (o.kind == ObstructionKind::NonDiagonalClass) {
        out["i"] = o.i;
        out["j"] = o.j;
        out["ratio"] = to_json(o.ratio);
    }
    return out;
}

Json to_json(const DecisionReport& r) {
    Json out{{"answer", r.answer == Answer::Yes ? "YES" : "NO"}, {"mode", std::string(to_string(r.mode))}};
    out["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
    out["obstruction"] = r.obstruction ? to_json(*r.obstruction) : Json(nullptr);
    out["note"] = r.note;
    return out;
}

Json to_json(const LevelPartition& p) {
    Json coeffs = Json::array();
    for (const auto& c : p.coefficients)
        coeffs.push_back(to_json(c));
    return Json{{"level", p.level()}, {"blocks", index_lists(p.blocks)}, {"coefficients", coeffs}};
}

// ---------------------------------------------------------------------------

Json to_json(const seq::SequenceSpec& spec) {
    using namespace seq;
    Json out = std::visit(
        [](const auto& s) -> Json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Bernoulli>) {
                return Json{{"seed", s.seed}};
            } else if constexpr (std::is_same_v<T, Champernowne>) {
                return Json::object();
            } else if constexpr (std::is_same_v<T, Rotation>) {
                return Json{{"alpha", s.alpha.label}};
            } else if constexpr (std::is_same_v<T, Avoider>) {
                return Json{{"a", s.a}, {"b", s.b}, {"c", s.c}, {"seed", s.seed}};
            } else if constexpr (std::is_same_v<T, Periodic>) {
                return Json{{"pattern", s.pattern}};
            } else if constexpr (std::is_same_v<T, GeometricColoring>) {
                return Json{{"ratio", s.ratio}, {"color", s.color}};
            } else {
                if (!s.base)
                    throw InputError("shift spec without a base sequence");
                return Json{{"base", to_json(*s.base)}, {"shifts", s.shifts}};
            }
        },
        spec.kind);
    out["kind"] = kind_name(spec);
    return out;
}

seq::SequenceSpec spec_from_json(const Json& j) {
    using namespace seq;
    const Json& kind_j = field(j, "kind");
    if (!kind_j.is_string())
        throw InputError("\"kind\" must be a string");
    const std::string kind = kind_j.get<std::string>();
    SequenceSpec spec;
    if (kind == "bernoulli") {
        spec.kind = Bernoulli{integer_field_or<std::uint64_t>(j, "seed", 1)};
    } else if (kind == "champernowne") {
        spec.kind = Champernowne{};
    } else if (kind == "rotation") {
        std::string label = "sqrt2-1";
        if (j.contains("alpha")) {
            if (!j.at("alpha").is_string())
                throw InputError("\"alpha\" must be a string");
            label = j.at("alpha").get<std::string>();
        }
        spec.kind = Rotation{AlphaSpec::parse(label)};
    } else if (kind == "avoider") {
        spec.kind = Avoider{integer_field_or<std::int64_t>(j, "a", 1), integer_field_or<std::int64_t>(j, "b", 2),
                            integer_field_or<std::int64_t>(j, "c", 0),
                            integer_field_or<std::uint64_t>(j, "seed", 1)};
    } else if (kind == "periodic") {
        Periodic p;
        if (j.contains("pattern")) {
            if (!j.at("pattern").is_string())
                throw InputError("\"pattern\" must be a string");
            p.pattern = j.at("pattern").get<std::string>();
        }
        spec.kind = p;
    } else if (kind == "geometric") {
        spec.kind = GeometricColoring{integer_field_or<std::uint64_t>(j, "ratio", 2),
                                      integer_field_or<int>(j, "color", 1)};
    } else if (kind == "shift") {
        std::vector<std::uint64_t> shifts;
        const Json& sj = field(j, "shifts");
        if (!sj.is_array())
            throw InputError("\"shifts\" must be an array");
        for (const auto& s : sj) {
            if (!s.is_number_unsigned())
                throw InputError("shifts must be positive integers");
            shifts.push_back(s.get<std::uint64_t>());
        }
        spec = shift_intersection(spec_from_json(field(j, "base")), std::move(shifts));
    } else {
        throw InputError("unknown sequence kind \"" + kind + "\"");
    }
    Sequence check(spec); // validates parameters
    return spec;
}

// ---------------------------------------------------------------------------

void write_window(const std::filesystem::path& path, const seq::BitWindow& w) {
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw InputError("cannot write " + path.string());
        seq::write_bits(out, w);
        if (!out)
            throw InputError("cannot write " + path.string());
    }
    Json side{{"start", w.start}, {"length", w.length}};
    side["spec"] = w.spec ? to_json(*w.spec) : Json(nullptr);
    write_text_file(sidecar_path(path), dump_pretty(side));
}

seq::BitWindow read_window(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path.string());
    seq::BitWindow w = seq::read_bits(in);
    const auto side = sidecar_path(path);
    if (std::filesystem::exists(side)) {
        const Json j = read_json_file(side);
        if (integer_field<std::uint64_t>(j, "start") != w.start || integer_field<std::uint64_t>(j, "length") != w.length)
            throw InputError("sidecar " + side.string() + " disagrees with the bit window header");
        if (j.contains("spec") && !j.at("spec").is_null())
            w.spec = spec_from_json(j.at("spec"));
    }
    return w;
}

Json stat_record(const Json& query, std::string_view name, const Rational& value) {
    return Json{{"query", query},
                {"value", std::string(name)},
                {"exact", to_string(value)},
                {"float", static_cast<double>(value)}};
}

} // namespace wmlab::io
