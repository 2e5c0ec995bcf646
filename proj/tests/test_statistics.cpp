#include "doctest.h"

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "wmlab/errors.hpp"
#include "wmlab/parallel.hpp"
#include "wmlab/statistics.hpp"

using namespace wmlab;
using namespace wmlab::stats;
using seq::SequenceSpec;
using testing::Q;

namespace {

SequenceSpec periodic(const std::string& p) { return SequenceSpec{seq::Periodic{p}}; }
SequenceSpec bernoulli(std::uint64_t seed) { return SequenceSpec{seq::Bernoulli{seed}}; }
SequenceSpec avoider(std::int64_t a, std::int64_t b, std::int64_t c, std::uint64_t seed) {
    return SequenceSpec{seq::Avoider{a, b, c, seed}};
}

// Naive references built straight on membership queries.

bool in(const SequenceSpec& s, std::int64_t n) { return n >= 1 && seq::member(s, static_cast<std::uint64_t>(n)); }

std::uint64_t naive_word_count(const SequenceSpec& s, std::uint64_t n, const std::string& word) {
    std::uint64_t hits = 0;
    for (std::uint64_t p = 1; p + word.size() - 1 <= n; ++p) {
        bool ok = true;
        for (std::size_t t = 0; t < word.size() && ok; ++t)
            ok = in(s, static_cast<std::int64_t>(p + t)) == (word[t] == '1');
        hits += ok;
    }
    return hits;
}

Rational naive_chi(const SequenceSpec& s, const std::vector<std::uint64_t>& shifts, std::uint64_t n) {
    long long sum = 0;
    for (std::uint64_t x = 1; x <= n; ++x) {
        int prod = in(s, static_cast<std::int64_t>(x)) ? 1 : -1;
        for (auto t : shifts)
            prod *= in(s, static_cast<std::int64_t>(x + t)) ? 1 : -1;
        sum += prod;
    }
    return Rational(sum, static_cast<long long>(n));
}

Rational density_on(const SequenceSpec& s, std::int64_t last) {
    long long c = 0;
    for (std::int64_t x = 1; x <= last; ++x)
        c += in(s, x);
    return Rational(c, last);
}

// ||w||^2 and ||v||^2 with exact rationals.
std::pair<Rational, Rational> naive_norms(const ProductAverageQuery& q) {
    const std::size_t k = q.pairs.size();
    auto shift = [&](std::size_t i) { return q.shifts.empty() ? std::int64_t{0} : q.shifts[i]; };
    auto index = [&](std::size_t i, std::uint64_t n, std::uint64_t m) {
        return q.pairs[i].first * static_cast<std::int64_t>(n) + q.pairs[i].second * static_cast<std::int64_t>(m) +
               shift(i);
    };
    std::vector<std::int64_t> last(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::int64_t best = 1;
        for (std::uint64_t n = 1; n <= q.n; ++n)
            for (std::uint64_t m = 1; m <= q.m; ++m)
                best = std::max(best, index(i, n, m));
        last[i] = best;
    }
    std::vector<Rational> d(k);
    if (q.sequences.size() == 1) {
        const auto top = *std::max_element(last.begin(), last.end());
        const Rational shared = density_on(q.sequences[0], top);
        std::fill(d.begin(), d.end(), shared);
    } else {
        for (std::size_t i = 0; i < k; ++i)
            d[i] = density_on(q.sequences[i], last[i]);
    }
    auto seq_of = [&](std::size_t i) -> const SequenceSpec& {
        return q.sequences.size() == 1 ? q.sequences[0] : q.sequences[i];
    };
    Rational w2 = 0, v2 = 0;
    for (std::uint64_t n = 1; n <= q.n; ++n) {
        Rational w = 0, v = 0;
        for (std::uint64_t m = 1; m <= q.m; ++m) {
            Rational pw = 1, pv = 1;
            for (std::size_t i = 0; i < k; ++i) {
                const std::int64_t x = index(i, n, m);
                const Rational ind = in(seq_of(i), x) ? 1 : 0;
                pv *= ind;
                pw *= x >= 1 ? ind - d[i] : Rational(0);
            }
            w += pw;
            v += pv;
        }
        w /= q.m;
        v /= q.m;
        w2 += w * w;
        v2 += v * v;
    }
    return {w2 / q.n, v2 / q.n};
}

} // namespace

TEST_CASE("density examples") {
    const auto ones = density(periodic("1"), 50);
    for (const auto& c : ones)
        CHECK(c.value() == 1);
    CHECK(ones.back().n == 50);
    // Checkpoints i^2 <= 50 plus N itself.
    CHECK(ones.size() == 8);
    CHECK(ones[6].n == 49);

    const auto alt = density(periodic("10"), 100);
    for (const auto& c : alt)
        if (c.n % 2 == 0)
            CHECK(c.value() == Q(1, 2));

    // Statistical: tolerance 0.002 at N = 10^6 (about 4 standard deviations).
    const auto b = density(bernoulli(1), 1000000);
    CHECK(std::abs(boost::multiprecision::abs(b.back().value() - Q(1, 2)).convert_to<double>()) < 0.002);
    CHECK_THROWS_AS(density(periodic("1"), 0), InputError);
}

TEST_CASE("density on a window that does not cover N") {
    const auto w = seq::materialize(periodic("1"), 1, 10);
    CHECK_THROWS_AS(density(w, 11), std::out_of_range);
    CHECK(density(w, 10).back().value() == 1);
}

TEST_CASE("word frequency examples") {
    const auto zero = word_frequencies(periodic("0"), 1000, 3);
    CHECK(zero.frequency("0") == 1);
    CHECK(zero.frequency("1") == 0);
    CHECK(zero.count("000") == 998);

    // bit(n) = pattern[n mod 2] reads 0101...; N - 1 windows of length 2.
    const auto alt = word_frequencies(periodic("10"), 1000, 4);
    CHECK(alt.frequency("01") == Q(1, 2));
    CHECK(alt.count("10") == 499);
    CHECK(alt.count("11") == 0);
    CHECK_THROWS_AS(word_frequencies(periodic("1"), 10, kMaxWordLength + 1), InputError);
    CHECK_THROWS_AS(alt.count("102"), InputError);
}

TEST_CASE("word frequencies against a naive count") {
    for (const auto& s : {bernoulli(7), avoider(2, 3, 1, 2), periodic("1101000"), SequenceSpec{seq::Champernowne{}}}) {
        const std::uint64_t n = 3001;
        const auto wf = word_frequencies(s, n, 5);
        for (unsigned len = 1; len <= 5; ++len) {
            std::uint64_t total = 0;
            for (std::uint64_t w = 0; w < (1U << len); ++w)
                total += wf.counts[len][w];
            // Sum over |w| = L is exactly N - L + 1.
            CHECK(total == n - len + 1);
        }
        for (const std::string word : {"0", "1", "01", "110", "0101", "11111", "10010"})
            CHECK(wf.count(word) == naive_word_count(s, n, word));
    }
}

TEST_CASE("chi correlation examples") {
    CHECK(chi_correlation(periodic("1"), {{1, 5, 9}, 1000}) == 1);
    CHECK(chi_correlation(periodic("10"), {{1}, 1000}) == -1);
    // Statistical: standard deviation 1e-3 at N = 10^6.
    const auto t = chi_correlation(bernoulli(1), {{1, 3}, 1000000});
    CHECK(std::abs(t.convert_to<double>()) < 0.01);
    CHECK_THROWS_AS(chi_correlation(periodic("1"), {{3, 1}, 10}), InputError);
    CHECK_THROWS_AS(chi_correlation(periodic("1"), {{0, 1}, 10}), InputError);
}

TEST_CASE("chi correlation with no shifts is 2 d - 1") {
    for (const auto& s : {bernoulli(3), avoider(1, 2, 0, 1), periodic("110")})
        for (std::uint64_t n : {1ULL, 17ULL, 4096ULL, 100003ULL}) {
            const auto d = density(s, n).back().value();
            CHECK(chi_correlation(s, {{}, n}) == 2 * d - 1);
        }
}

TEST_CASE("chi correlation against a naive sum") {
    const std::vector<std::vector<std::uint64_t>> tuples{{1}, {1, 2}, {1, 3, 7}, {2, 64, 65, 200}};
    for (const auto& s : {bernoulli(11), avoider(1, 2, 0, 5), SequenceSpec{seq::Champernowne{}}})
        for (const auto& shifts : tuples)
            for (std::uint64_t n : {1ULL, 63ULL, 64ULL, 65ULL, 2000ULL})
                CHECK(chi_correlation(s, {shifts, n}) == naive_chi(s, shifts, n));
}

TEST_CASE("averaged product norm examples") {
    ProductAverageQuery q;
    q.pairs = {{1, 1}, {1, 2}};
    q.m = 200;
    q.n = 2000;
    q.sequences = {periodic("1")};
    const auto ones = averaged_product_norm(q);
    CHECK(ones.norm_w_squared == 0);
    CHECK(ones.norm_v == doctest::Approx(1.0));

    // v(n) = 1/2 on even n and 0 on odd n, so ||v||^2 = 1/8 exactly at even N, even M.
    q.sequences = {periodic("10")};
    const auto alt = averaged_product_norm(q);
    CHECK(alt.norm_v_squared == Q(1, 8));
    CHECK(alt.densities[0] == Q(1, 2));

    auto singular = q;
    singular.pairs = {{1, 2}, {2, 4}};
    CHECK_THROWS_AS(averaged_product_norm(singular), InputError);
    singular.require_nonsingular = false;
    CHECK_NOTHROW(averaged_product_norm(singular));

    auto bad = q;
    bad.pairs = {{0, 1}, {1, 2}};
    CHECK_THROWS_AS(averaged_product_norm(bad), InputError);
    bad = q;
    bad.sequences = {periodic("1"), periodic("1"), periodic("1")};
    CHECK_THROWS_AS(averaged_product_norm(bad), InputError);
}

TEST_CASE("averaged product norm against an exact naive sum") {
    std::vector<ProductAverageQuery> cases;
    ProductAverageQuery q;
    q.pairs = {{1, 1}, {1, 2}};
    q.m = 7;
    q.n = 13;
    q.sequences = {bernoulli(2)};
    cases.push_back(q);
    q.pairs = {{2, -1}, {1, 3}, {3, 1}};
    q.shifts = {-4, 0, 5};
    q.sequences = {bernoulli(1), avoider(1, 2, 0, 1), periodic("100")};
    cases.push_back(q);
    q.pairs = {{1, -3}};
    q.shifts = {};
    q.sequences = {SequenceSpec{seq::Champernowne{}}};
    cases.push_back(q);
    for (const auto& c : cases) {
        const auto got = averaged_product_norm(c);
        const auto [w2, v2] = naive_norms(c);
        CHECK(got.norm_w_squared == w2);
        CHECK(got.norm_v_squared == v2);
    }
}

TEST_CASE("subsample examples") {
    const auto ones = subsample_compare(periodic("1"), 3, {0, 1}, 1000);
    CHECK(ones.full == 0);
    CHECK(ones.subsampled == 0);

    // Period 3 with xi in {2/3, -1/3}: full = (4/9 + 1/9 + 1/9)/3, subsampled = 4/9
    // once the window is a multiple of the period.
    const auto p = subsample_compare(periodic("100"), 3, {0, 3}, 999);
    CHECK(p.subsampled == Q(4, 9));
    CHECK(p.full == Q(2, 9));
    CHECK(p.difference == Q(-2, 9));

    // Statistical: both averages have standard deviation about 2.5e-4 at N = 10^6.
    const auto b = subsample_compare(bernoulli(1), 3, {0, 1}, 1000000);
    CHECK(std::abs(b.difference.convert_to<double>()) < 0.02);
    CHECK_THROWS_AS(subsample_compare(bernoulli(1), 0, {0}, 10), InputError);
}

TEST_CASE("subsample against a naive sum") {
    const auto s = avoider(2, 3, 1, 4);
    const std::vector<std::int64_t> shifts{-2, 0, 5};
    const std::uint64_t a = 4, n = 300;
    const std::int64_t x = static_cast<std::int64_t>(a * n) + 5;
    const Rational d = density_on(s, x);
    auto xi = [&](std::int64_t i) { return i < 1 ? Rational(0) : (in(s, i) ? Rational(1 - d) : Rational(-d)); };
    Rational full = 0, sub = 0;
    for (std::uint64_t t = 1; t <= n; ++t) {
        Rational pf = 1, ps = 1;
        for (auto b : shifts) {
            pf *= xi(static_cast<std::int64_t>(t) + b);
            ps *= xi(static_cast<std::int64_t>(a * t) + b);
        }
        full += pf;
        sub += ps;
    }
    const auto r = subsample_compare(s, a, shifts, n);
    CHECK(r.full == full / n);
    CHECK(r.subsampled == sub / n);
}

TEST_CASE("van der Corput harness examples") {
    const std::size_t i_max = 20, j = 200;
    std::vector<std::vector<double>> same(i_max + j, std::vector<double>{1.0, 0.0});
    const auto r1 = vdc_check(same, 0.1, i_max, j);
    CHECK_FALSE(r1.hypothesis_held);
    CHECK(r1.correlations.size() == i_max);
    CHECK(r1.correlations[0] == doctest::Approx(1.0));

    std::vector<std::vector<double>> zero(i_max + j, std::vector<double>(3, 0.0));
    const auto r2 = vdc_check(zero, 0.1, i_max, j);
    CHECK(r2.hypothesis_held);
    CHECK(r2.conclusion_held);

    std::vector<std::vector<double>> big(i_max + j, std::vector<double>{2.0});
    CHECK_THROWS_AS(vdc_check(big, 0.1, i_max, j), InputError);
    CHECK_THROWS_AS(vdc_check(zero, 0.1, i_max, j + 1), InputError);
}

TEST_CASE("van der Corput harness on random sign vectors") {
    // Statistical: d = 64, J = 10^5; correlations have standard deviation
    // about 4e-4 and ||avg|| is about 3e-3.
    const std::size_t d = 64, i_max = 120, j = 100000;
    std::mt19937_64 rng(5);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    std::vector<std::vector<double>> u(i_max + j, std::vector<double>(d));
    for (auto& v : u)
        for (auto& x : v)
            x = (rng() & 1U) ? s : -s;
    const auto r = vdc_check(u, 0.1, i_max, j);
    CHECK(r.hypothesis_held);
    CHECK(r.conclusion_held);
    CHECK(r.in_threshold_regime);
    CHECK(r.average_norm < 0.1);
}

TEST_CASE("pattern search examples") {
    const auto ones = search_pattern({periodic("1")}, {1, 1, 2}, {1, 2, 3}, {0, 0, 0}, 10, 10, true);
    REQUIRE(ones.size() == 1);
    CHECK(ones[0] == PatternHit{1, 1});
    CHECK(search_pattern({periodic("1")}, {1}, {1}, {0}, 3, 4, false).size() == 12);

    // Statistical: each cell hits with probability about 1/8; 10^6 cells.
    const auto schur = search_pattern({bernoulli(1)}, {1, 1, 2}, {1, 2, 3}, {0, 0, 0}, 1000, 1000, true);
    CHECK(schur.size() == 1);

    for (std::uint64_t seed : {1, 2}) {
        const auto none = search_pattern({avoider(1, 2, 0, seed)}, {1, 2}, {2, 4}, {0, 0}, 2000, 2000, false);
        CHECK(none.empty());
    }
    CHECK_THROWS_AS(search_pattern({periodic("1")}, {1, 1}, {1}, {0, 0}, 3, 3), InputError);
    CHECK_THROWS_AS(search_pattern({periodic("1")}, {1}, {1}, {0}, 0, 3), InputError);
}

TEST_CASE("pattern search against a naive scan") {
    const std::vector<SequenceSpec> seqs{bernoulli(3), periodic("110"), avoider(2, 3, 5, 1)};
    const std::vector<std::int64_t> a{1, 2, -1}, b{3, 1, 4}, f{0, -2, 7};
    const auto hits = search_pattern(seqs, a, b, f, 60, 70, false);
    std::vector<PatternHit> expect;
    for (std::uint64_t n = 1; n <= 60; ++n)
        for (std::uint64_t m = 1; m <= 70; ++m) {
            bool ok = true;
            for (std::size_t i = 0; i < 3 && ok; ++i)
                ok = in(seqs[i], a[i] * static_cast<std::int64_t>(n) + b[i] * static_cast<std::int64_t>(m) + f[i]);
            if (ok)
                expect.push_back({n, m});
        }
    CHECK(hits == expect);
    REQUIRE_FALSE(expect.empty());
    CHECK(search_pattern(seqs, a, b, f, 60, 70, true) == std::vector<PatternHit>{expect.front()});
}

TEST_CASE("difference cover examples") {
    const auto ones = difference_covers(periodic("1"), 50, 100);
    CHECK(std::all_of(ones.begin(), ones.end(), [](bool x) { return x; }));
    const auto alt = difference_covers(periodic("10"), 10, 100);
    CHECK_FALSE(alt[0]);
    CHECK(alt[1]);
    const auto b = difference_covers(bernoulli(1), 100, 100000);
    CHECK(b.size() == 100);
    CHECK(std::all_of(b.begin(), b.end(), [](bool x) { return x; }));
    CHECK_THROWS_AS(difference_covers(periodic("1"), 51, 100), InputError);
    CHECK_THROWS_AS(difference_covers(periodic("1"), 0, 100), InputError);
}

TEST_CASE("statistics do not depend on the worker count") {
    const auto s = avoider(1, 2, 0, 1);
    ProductAverageQuery q;
    q.pairs = {{1, 1}, {1, 2}};
    q.m = 50;
    q.n = 30000;
    q.sequences = {s};
    auto run = [&] {
        std::vector<Rational> out;
        out.push_back(density(s, 3000000).back().value());
        out.push_back(chi_correlation(s, {{1, 3, 7}, 3000000}));
        const auto wf = word_frequencies(s, 3000000, 6);
        for (const auto& row : wf.counts)
            for (auto c : row)
                out.emplace_back(c);
        const auto pn = averaged_product_norm(q);
        out.push_back(pn.norm_w_squared);
        out.push_back(pn.norm_v_squared);
        out.push_back(subsample_compare(s, 3, {0, 1}, 1000000).difference);
        return out;
    };
    set_worker_count(1);
    const auto one = run();
    set_worker_count(4);
    const auto four = run();
    set_worker_count(0);
    CHECK(one == four);
}
