// wmlab: command-line front end for the decision procedure, the Rado check,
// sequence generation and the statistics harness.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wmlab/errors.hpp"
#include "wmlab/io.hpp"
#include "wmlab/statistics.hpp"

namespace {

using wmlab::InputError;
using wmlab::io::Json;
namespace seq = wmlab::seq;
namespace stats = wmlab::stats;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    if (text.empty())
        return out;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep))
        out.push_back(part);
    if (text.back() == sep)
        out.emplace_back();
    return out;
}

std::int64_t to_int(const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw InputError("expected an integer, got \"" + s + "\"");
    }
    if (used != s.size())
        throw InputError("expected an integer, got \"" + s + "\"");
    return v;
}

std::vector<std::int64_t> int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    for (const auto& s : split(text, ','))
        out.push_back(to_int(s));
    return out;
}

std::vector<std::uint64_t> positive_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    for (auto v : int_list(text)) {
        if (v <= 0)
            throw InputError("expected positive integers in \"" + text + "\"");
        out.push_back(static_cast<std::uint64_t>(v));
    }
    return out;
}

void collect_seeds(const Json& spec, Json& seeds) {
    if (spec.contains("seed"))
        seeds.push_back(spec.at("seed"));
    if (spec.contains("base"))
        collect_seeds(spec.at("base"), seeds);
}

void print_line(const Json& j) { std::cout << wmlab::io::dump_line(j) << '\n'; }

// Sequence selection shared by gen, stats, search and avoid.
struct SpecFlags {
    std::string spec_path;
    std::string kind;
    std::uint64_t seed = 1;
    std::int64_t a = 1;
    std::int64_t b = 2;
    std::int64_t c = 0;
    std::string pattern = "10";
    std::string alpha = "sqrt2-1";
    std::uint64_t ratio = 2;
    int color = 1;

    void attach(CLI::App* app, bool with_spec_file) {
        if (with_spec_file)
            app->add_option("--spec", spec_path, "Sequence spec JSON file");
        app->add_option("--kind", kind, "bernoulli|champernowne|rotation|avoider|periodic|geometric");
        app->add_option("--seed", seed, "Seed for bernoulli and avoider (default 1)");
        app->add_option("--a", a, "Avoider coefficient a (default 1)");
        app->add_option("--b", b, "Avoider coefficient b (default 2)");
        app->add_option("--c", c, "Avoider constant c (default 0)");
        app->add_option("--pattern", pattern, "Periodic pattern (default 10)");
        app->add_option("--alpha", alpha, "Rotation angle: sqrt2-1, sqrt(d) or 0x<hex>");
        app->add_option("--ratio", ratio, "Geometric coloring ratio (default 2)");
        app->add_option("--color", color, "Geometric coloring class, 1 or 2");
    }

    bool given() const { return !spec_path.empty() || !kind.empty(); }

    seq::SequenceSpec resolve() const {
        if (!spec_path.empty()) {
            if (!kind.empty())
                throw InputError("give either --spec or --kind, not both");
            return wmlab::io::spec_from_json(wmlab::io::read_json_file(spec_path));
        }
        if (kind.empty())
            throw InputError("a sequence is required (--spec or --kind)");
        Json j{{"kind", kind}};
        if (kind == "bernoulli") {
            j["seed"] = seed;
        } else if (kind == "avoider") {
            j.update(Json{{"a", a}, {"b", b}, {"c", c}, {"seed", seed}});
        } else if (kind == "periodic") {
            j["pattern"] = pattern;
        } else if (kind == "rotation") {
            j["alpha"] = alpha;
        } else if (kind == "geometric") {
            j.update(Json{{"ratio", ratio}, {"color", color}});
        } else if (kind == "shift") {
            throw InputError("shift intersections are read from a --spec file");
        }
        return wmlab::io::spec_from_json(j);
    }
};

// ---------------------------------------------------------------------------

struct DecideArgs {
    std::string input;
    std::string mode = "wm";
};

int run_decide(const DecideArgs& args) {
    const auto system = wmlab::io::parse_system_file(args.input);
    const auto report = wmlab::decide(system, wmlab::parse_mode(args.mode));
    std::cout << wmlab::io::dump_pretty(wmlab::io::to_json(report));
    return 0;
}

int run_rado(const std::string& input) {
    const auto system = wmlab::io::parse_system_file(input);
    Json out;
    const bool homogeneous =
        std::all_of(system.rhs.begin(), system.rhs.end(), [](const wmlab::Rational& r) { return r == 0; });
    std::optional<wmlab::LevelPartition> level;
    if (system.matrix.rows() > 0) {
        level = wmlab::columns_condition(system.matrix);
    } else {
        // No equations: the single block {0..k-1} witnesses the condition.
        std::vector<std::size_t> all(system.k);
        for (std::size_t i = 0; i < system.k; ++i)
            all[i] = i;
        level = wmlab::LevelPartition{{all}, {}};
    }
    out["homogeneous"] = homogeneous;
    out["columns_condition"] = level.has_value();
    out["level_partition"] = level ? wmlab::io::to_json(*level) : Json(nullptr);
    out["result"] = homogeneous && level ? "partition-regular" : "not partition-regular";
    std::cout << wmlab::io::dump_pretty(out);
    return 0;
}

int run_cone(const std::string& input) {
    const auto system = wmlab::io::parse_system_file(input);
    if (system.k > wmlab::kMaxConeDim)
        throw InputError("k = " + std::to_string(system.k) + " exceeds the supported maximum of " +
                         std::to_string(wmlab::kMaxConeDim));
    const auto cone = wmlab::nonneg_intersection(wmlab::kernel_basis(system.matrix), system.k);
    Json out = wmlab::io::to_json(cone);
    const auto witness = wmlab::strictly_positive_witness(cone);
    out["positive_witness"] = witness ? wmlab::io::to_json(*witness) : Json(nullptr);
    out["partition"] = witness ? wmlab::io::to_json(wmlab::coordinate_partition(cone)) : Json(nullptr);
    std::cout << wmlab::io::dump_pretty(out);
    return 0;
}

// ---------------------------------------------------------------------------

struct GenArgs {
    SpecFlags spec;
    std::uint64_t n = 0;
    std::uint64_t start = 1;
    std::string output;
};

int run_gen(const GenArgs& args) {
    if (args.n == 0)
        throw InputError("--n must be at least 1");
    if (args.start == 0)
        throw InputError("--start must be at least 1");
    const auto spec = args.spec.resolve();
    const auto window = seq::materialize(spec, args.start, args.n);
    wmlab::io::write_window(args.output, window);
    const Json spec_j = wmlab::io::to_json(spec);
    Json seeds = Json::array();
    collect_seeds(spec_j, seeds);
    print_line(Json{{"header", {{"command", "gen"}, {"seeds", seeds}, {"spec", spec_j}}}});
    print_line(Json{{"length", window.length}, {"members", window.popcount()}, {"output", args.output},
                    {"start", window.start}});
    return 0;
}

// ---------------------------------------------------------------------------

struct StatsArgs {
    std::string stat;
    SpecFlags spec;
    std::string bits;
    std::uint64_t n = 0;
    unsigned max_len = 6;
    std::string shifts;
    std::string pairs = "1,1;1,2";
    std::uint64_t m = 200;
    std::uint64_t step = 3;
    std::uint64_t cmax = 100;
    bool singular_ok = false;
    bool csv = false;
};

std::string csv_field(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

class Emitter {
public:
    explicit Emitter(bool csv) : csv_(csv) {
        if (csv_)
            std::cout << "query,value,exact,float\n";
    }
    void header(const Json& h) {
        if (!csv_)
            print_line(Json{{"header", h}});
    }
    void record(const Json& r) {
        if (!csv_) {
            print_line(r);
            return;
        }
        const std::string exact = r.at("exact").is_null() ? "" : r.at("exact").get<std::string>();
        std::cout << csv_field(r.at("query").dump()) << ',' << r.at("value").get<std::string>() << ',' << exact << ','
                  << r.at("float").dump() << '\n';
    }

private:
    bool csv_;
};

Json float_record(const Json& query, const std::string& name, double v) {
    return Json{{"query", query}, {"value", name}, {"exact", nullptr}, {"float", v}};
}

int run_stats(const StatsArgs& args) {
    if (args.spec.given() == !args.bits.empty())
        throw InputError("give exactly one of --spec/--kind or --bits");
    std::optional<seq::BitWindow> window;
    seq::SequenceSpec spec;
    if (!args.bits.empty()) {
        window = wmlab::io::read_window(args.bits);
        if (!window->spec && (args.stat == "prodnorm" || args.stat == "subsample"))
            throw InputError(args.stat + " needs the sequence spec; the bit window has no sidecar");
        if (window->spec)
            spec = *window->spec;
    } else {
        spec = args.spec.resolve();
    }
    const bool have_spec = args.spec.given() || (window && window->spec);
    const std::uint64_t n = args.n != 0 ? args.n : (window ? window->start + window->length - 1 : 0);
    if (n == 0)
        throw InputError("--n is required");

    const Json spec_j = have_spec ? wmlab::io::to_json(spec) : Json(nullptr);
    Json seeds = Json::array();
    if (have_spec)
        collect_seeds(spec_j, seeds);
    Json params{{"n", n}};
    Emitter out(args.csv);

    if (args.stat == "density") {
        out.header({{"command", "stats density"}, {"params", params}, {"seeds", seeds}, {"spec", spec_j}});
        const auto points = window ? stats::density(*window, n) : stats::density(spec, n);
        for (const auto& p : points)
            out.record(wmlab::io::stat_record({{"n", p.n}, {"stat", "density"}}, "density", p.value()));
    } else if (args.stat == "words") {
        params["max_len"] = args.max_len;
        out.header({{"command", "stats words"}, {"params", params}, {"seeds", seeds}, {"spec", spec_j}});
        const auto wf = window ? stats::word_frequencies(*window, n, args.max_len)
                               : stats::word_frequencies(spec, n, args.max_len);
        for (unsigned len = 1; len <= args.max_len; ++len)
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
                std::string word(len, '0');
                for (unsigned t = 0; t < len; ++t)
                    if ((v >> (len - 1 - t)) & 1U)
                        word[t] = '1';
                out.record(wmlab::io::stat_record({{"n", n}, {"stat", "words"}, {"word", word}}, "frequency",
                                                  wf.frequency(word)));
            }
    } else if (args.stat == "corr") {
        stats::CorrelationQuery q{positive_list(args.shifts), n};
        params["shifts"] = q.shifts;
        out.header({{"command", "stats corr"}, {"params", params}, {"seeds", seeds}, {"spec", spec_j}});
        const auto t = window ? stats::chi_correlation(*window, q) : stats::chi_correlation(spec, q);
        out.record(wmlab::io::stat_record({{"n", n}, {"shifts", q.shifts}, {"stat", "corr"}}, "T_N", t));
    } else if (args.stat == "prodnorm") {
        stats::ProductAverageQuery q;
        for (const auto& p : split(args.pairs, ';')) {
            const auto ab = int_list(p);
            if (ab.size() != 2)
                throw InputError("--pairs expects \"a,b;a,b;...\"");
            q.pairs.emplace_back(ab[0], ab[1]);
        }
        q.shifts = int_list(args.shifts);
        q.m = args.m;
        q.n = n;
        q.sequences = {spec};
        q.require_nonsingular = !args.singular_ok;
        Json pairs = Json::array();
        for (const auto& [a, b] : q.pairs)
            pairs.push_back({a, b});
        params.update(Json{{"m", q.m}, {"pairs", pairs}, {"shifts", q.shifts}});
        out.header({{"command", "stats prodnorm"}, {"params", params}, {"seeds", seeds}, {"spec", spec_j}});
        const auto r = stats::averaged_product_norm(q);
        const Json query{{"m", q.m}, {"n", n}, {"pairs", pairs}, {"shifts", q.shifts}, {"stat", "prodnorm"}};
        for (std::size_t i = 0; i < r.densities.size(); ++i) {
            Json dq = query;
            dq["factor"] = i;
            out.record(wmlab::io::stat_record(dq, "density", r.densities[i]));
        }
        out.record(wmlab::io::stat_record(query, "norm_w_squared", r.norm_w_squared));
        out.record(wmlab::io::stat_record(query, "norm_v_squared", r.norm_v_squared));
        out.record(float_record(query, "norm_w", r.norm_w));
        out.record(float_record(query, "norm_v", r.norm_v));
    } else if (args.stat == "subsample") {
        const auto shifts = int_list(args.shifts);
        params.update(Json{{"shifts", shifts}, {"step", args.step}});
        out.header({{"command", "stats subsample"}, {"params", params}, {"seeds", seeds}, {"spec", spec_j}});
        const auto r = stats::subsample_compare(spec, args.step, shifts, n);
        const Json query{{"n", n}, {"shifts", shifts}, {"stat", "subsample"}, {"step", args.step}};
        out.record(wmlab::io::stat_record(query, "full", r.full));
        out.record(wmlab::io::stat_record(query, "subsampled", r.subsampled));
        out.record(wmlab::io::stat_record(query, "difference", r.difference));
    } else if (args.stat == "diff") {
        params["cmax"] = args.cmax;
        out.header({{"command", "stats diff"}, {"params", params}, {"seeds", seeds}, {"spec", spec_j}});
        const auto covers =
            window ? stats::difference_covers(*window, args.cmax, n) : stats::difference_covers(spec, args.cmax, n);
        for (std::size_t c = 0; c < covers.size(); ++c)
            out.record(wmlab::io::stat_record({{"c", c + 1}, {"n", n}, {"stat", "diff"}}, "covered",
                                              wmlab::Rational(covers[c] ? 1 : 0)));
    } else {
        throw InputError("unknown statistic \"" + args.stat + "\"");
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct SearchArgs {
    std::string cert;
    std::string pattern;
    SpecFlags spec;
    std::uint64_t n_max = 100;
    std::uint64_t m_max = 100;
    bool first = false;
};

std::vector<std::int64_t> small_integers(const wmlab::RationalVector& v, const char* name) {
    std::vector<std::int64_t> out;
    for (const auto& x : v) {
        if (boost::multiprecision::denominator(x) != 1)
            throw InputError(std::string("certificate vector ") + name + " must be integral");
        const auto num = boost::multiprecision::numerator(x);
        if (num > std::numeric_limits<std::int64_t>::max() || num < std::numeric_limits<std::int64_t>::min())
            throw InputError(std::string("certificate vector ") + name + " has an entry out of range");
        out.push_back(static_cast<std::int64_t>(num));
    }
    return out;
}

int run_search(const SearchArgs& args) {
    if (args.cert.empty() == args.pattern.empty())
        throw InputError("give exactly one of --cert or --abf");
    std::vector<std::int64_t> a, b, f;
    if (!args.cert.empty()) {
        const auto c = wmlab::io::certificate_from_json(wmlab::io::read_json_file(args.cert));
        a = small_integers(c.a, "a");
        b = small_integers(c.b, "b");
        f = small_integers(c.f, "f");
    } else {
        const auto parts = split(args.pattern, ';');
        if (parts.size() < 2 || parts.size() > 3)
            throw InputError("--abf expects \"a1,a2,..;b1,b2,..[;f1,f2,..]\"");
        a = int_list(parts[0]);
        b = int_list(parts[1]);
        f = parts.size() == 3 ? int_list(parts[2]) : std::vector<std::int64_t>(a.size(), 0);
    }
    const auto spec = args.spec.resolve();
    const Json spec_j = wmlab::io::to_json(spec);
    Json seeds = Json::array();
    collect_seeds(spec_j, seeds);
    print_line(Json{{"header",
                     {{"command", "search"},
                      {"params", {{"a", a}, {"b", b}, {"f", f}, {"first", args.first}, {"mmax", args.m_max},
                                  {"nmax", args.n_max}}},
                      {"seeds", seeds},
                      {"spec", spec_j}}}});
    const auto hits = stats::search_pattern({spec}, a, b, f, args.n_max, args.m_max, args.first);
    for (const auto& h : hits)
        print_line(Json{{"m", h.m}, {"n", h.n}});
    print_line(Json{{"hits", hits.size()}});
    return 0;
}

// ---------------------------------------------------------------------------

struct AvoidArgs {
    std::int64_t a = 1;
    std::int64_t b = 2;
    std::int64_t c = 0;
    std::uint64_t seed = 1;
    std::uint64_t n = 1000000;
    unsigned levels = 4;
};

int run_avoid(const AvoidArgs& args) {
    if (args.n == 0)
        throw InputError("--n must be at least 1");
    const seq::AvoiderParams params(args.a, args.b, args.c);
    const seq::SequenceSpec spec{seq::Avoider{args.a, args.b, args.c, args.seed}};
    const auto w = seq::materialize(spec, 1, args.n);

    // Solutions of a x = b y + c with x, y in A_S ∩ [1, N].
    std::uint64_t solutions = 0;
    for (std::uint64_t y = 1; y <= args.n; ++y) {
        if (!w.bit(y - 1))
            continue;
        const __int128 rhs = static_cast<__int128>(args.b) * y + args.c;
        if (rhs <= 0 || rhs % args.a != 0)
            continue;
        const __int128 x = rhs / args.a;
        if (x <= static_cast<__int128>(args.n) && w.bit(static_cast<std::uint64_t>(x) - 1))
            ++solutions;
    }

    Json levels = Json::array();
    if (!params.degraded())
        for (const auto& l : seq::avoider_levels(params, args.levels))
            levels.push_back(l.str());
    print_line(Json{{"header",
                     {{"command", "avoid"},
                      {"params", {{"a", args.a}, {"b", args.b}, {"c", args.c}, {"n", args.n}}},
                      {"seeds", {args.seed}},
                      {"spec", wmlab::io::to_json(spec)}}}});
    print_line(Json{{"degraded", params.degraded()},
                    {"density", wmlab::to_string(wmlab::Rational(wmlab::Integer(w.popcount()), wmlab::Integer(args.n)))},
                    {"levels", levels},
                    {"normalized", {params.a(), params.b(), params.c()}},
                    {"solutions", solutions}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wmlab: universal solvability of linear systems in WM and normal sets"};
    app.require_subcommand(1);

    DecideArgs decide_args;
    auto* decide = app.add_subcommand("decide", "Decide solvability in every WM / normal set");
    decide->add_option("-i,--input", decide_args.input, "System JSON file")->required();
    decide->add_option("--mode", decide_args.mode, "wm or normal (default wm)");

    std::string rado_input;
    auto* rado = app.add_subcommand("rado", "Rado columns condition");
    rado->add_option("-i,--input", rado_input, "System JSON file")->required();

    std::string cone_input;
    auto* cone = app.add_subcommand("cone", "Cone generators and coordinate partition");
    cone->add_option("-i,--input", cone_input, "System JSON file")->required();

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Materialize a sequence into a .bits file");
    gen_args.spec.attach(gen, true);
    gen->add_option("--n", gen_args.n, "Number of bits")->required();
    gen->add_option("--start", gen_args.start, "First index (default 1)");
    gen->add_option("-o,--output", gen_args.output, "Output .bits path")->required();

    StatsArgs stats_args;
    auto* st = app.add_subcommand("stats", "Sequence statistics as JSON lines");
    st->add_option("stat", stats_args.stat, "words|corr|density|prodnorm|subsample|diff")
        ->required()
        ->check(CLI::IsMember({"words", "corr", "density", "prodnorm", "subsample", "diff"}));
    stats_args.spec.attach(st, true);
    st->add_option("--bits", stats_args.bits, "Read a .bits file instead of a spec");
    st->add_option("--n", stats_args.n, "Window length N");
    st->add_option("--max-len", stats_args.max_len, "Longest word for words (default 6)");
    st->add_option("--shifts", stats_args.shifts, "Comma-separated shifts (corr, subsample, prodnorm)");
    st->add_option("--pairs", stats_args.pairs, "prodnorm pairs \"a,b;a,b\" (default 1,1;1,2)");
    st->add_option("--m", stats_args.m, "prodnorm inner window M (default 200)");
    st->add_option("--step", stats_args.step, "subsample step a (default 3)");
    st->add_option("--cmax", stats_args.cmax, "diff: largest difference (default 100)");
    st->add_flag("--allow-singular", stats_args.singular_ok, "prodnorm: skip the determinant check");
    st->add_flag("--csv", stats_args.csv, "CSV instead of JSON lines");

    SearchArgs search_args;
    auto* search = app.add_subcommand("search", "Search a sequence for pattern points");
    search->add_option("--cert", search_args.cert, "Certificate JSON (a, b, f)");
    search->add_option("--abf", search_args.pattern, "Raw pattern vectors \"a;b;f\" as comma lists");
    search_args.spec.attach(search, true);
    search->add_option("--nmax", search_args.n_max, "Bound on n (default 100)");
    search->add_option("--mmax", search_args.m_max, "Bound on m (default 100)");
    search->add_flag("--first", search_args.first, "Stop at the first hit");

    AvoidArgs avoid_args;
    auto* avoid = app.add_subcommand("avoid", "Avoider set for a x = b y + c: levels and a solution count");
    avoid->add_option("--a", avoid_args.a, "a (default 1)");
    avoid->add_option("--b", avoid_args.b, "b (default 2)");
    avoid->add_option("--c", avoid_args.c, "c (default 0)");
    avoid->add_option("--seed", avoid_args.seed, "Seed of S (default 1)");
    avoid->add_option("--n", avoid_args.n, "Range [1, N] (default 10^6)");
    avoid->add_option("--levels", avoid_args.levels, "Print l_0..l_levels (default 4)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (decide->parsed())
            return run_decide(decide_args);
        if (rado->parsed())
            return run_rado(rado_input);
        if (cone->parsed())
            return run_cone(cone_input);
        if (gen->parsed())
            return run_gen(gen_args);
        if (st->parsed())
            return run_stats(stats_args);
        if (search->parsed())
            return run_search(search_args);
        if (avoid->parsed())
            return run_avoid(avoid_args);
    } catch (const wmlab::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const wmlab::InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
