#include "wmlab/statistics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wmlab/errors.hpp"
#include "wmlab/parallel.hpp"

namespace wmlab::stats {

namespace {

using i128 = __int128;

constexpr std::uint64_t kChunk = std::uint64_t{1} << 14;
// Largest window a spec-based query will materialize (bits).
constexpr std::uint64_t kMaxWindow = std::uint64_t{1} << 34;

/// A window repacked into 64-bit words; bit j is the membership of first + j.
/// Reads below 1 or past the end yield 0 only where the caller allows it.
class Packed {
public:
    explicit Packed(const BitWindow& w) : first_(w.start), len_(w.length), words_((w.length + 63) / 64 + 1, 0) {
        for (std::size_t i = 0; i < w.bytes.size(); ++i)
            words_[i / 8] |= std::uint64_t{w.bytes[i]} << (8 * (i % 8));
    }

    void require(std::int64_t lo, std::int64_t hi) const {
        // Only indices >= 1 have to be present.
        lo = std::max<std::int64_t>(lo, 1);
        if (hi < lo)
            return;
        if (static_cast<std::uint64_t>(lo) < first_ || static_cast<std::uint64_t>(hi) - first_ >= len_)
            throw std::out_of_range("window [" + std::to_string(first_) + ", " + std::to_string(first_ + len_ - 1) +
                                    "] does not cover indices [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                    "]");
    }

    bool get(std::int64_t x) const {
        if (x < 1)
            return false;
        const std::uint64_t off = static_cast<std::uint64_t>(x) - first_;
        return (words_[off >> 6] >> (off & 63)) & 1U;
    }

    /// Bits x .. x + 63 (bit t of the result is index x + t); indices below 1
    /// and past the window read as 0.
    std::uint64_t get64(std::int64_t x) const {
        if (x < 1) {
            if (x <= -64)
                return 0;
            const unsigned skip = static_cast<unsigned>(1 - x);
            return skip >= 64 ? 0 : (get64(1) << skip);
        }
        const std::uint64_t off = static_cast<std::uint64_t>(x) - first_;
        const std::uint64_t wi = off >> 6;
        const unsigned sh = off & 63;
        if (wi >= words_.size())
            return 0;
        std::uint64_t v = words_[wi] >> sh;
        if (sh != 0 && wi + 1 < words_.size())
            v |= words_[wi + 1] << (64 - sh);
        return v;
    }

private:
    std::uint64_t first_;
    std::uint64_t len_;
    std::vector<std::uint64_t> words_;
};

std::uint64_t low_mask(std::uint64_t count) { return count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1; }

void require_n(std::uint64_t n) {
    if (n == 0)
        throw InputError("window length N must be at least 1");
}

BitWindow window_for(const SequenceSpec& spec, std::int64_t last) {
    const std::uint64_t len = last < 1 ? 1 : static_cast<std::uint64_t>(last);
    if (len > kMaxWindow)
        throw InputError("query needs " + std::to_string(len) + " bits, more than the supported " +
                         std::to_string(kMaxWindow));
    return seq::materialize(spec, 1, len);
}

std::int64_t checked_index(i128 v) {
    if (v > static_cast<i128>(kMaxWindow) || v < -static_cast<i128>(kMaxWindow))
        throw InputError("pattern index out of the supported range");
    return static_cast<std::int64_t>(v);
}

// Ones among indices [lo, hi] (clamped to >= 1).
std::uint64_t count_range(const Packed& p, std::int64_t lo, std::int64_t hi) {
    lo = std::max<std::int64_t>(lo, 1);
    std::uint64_t total = 0;
    for (std::int64_t x = lo; x <= hi; x += 64)
        total += static_cast<std::uint64_t>(std::popcount(p.get64(x) & low_mask(static_cast<std::uint64_t>(hi - x + 1))));
    return total;
}

unsigned bit_width_u(std::uint64_t v) { return static_cast<unsigned>(std::bit_width(v)); }

} // namespace

// ---------------------------------------------------------------------------

std::vector<Checkpoint> density(const BitWindow& w, std::uint64_t n) {
    require_n(n);
    Packed p(w);
    p.require(1, static_cast<std::int64_t>(n));
    std::vector<Checkpoint> out;
    std::uint64_t count = 0;
    std::uint64_t done = 0;
    auto advance = [&](std::uint64_t upto) {
        count += count_range(p, static_cast<std::int64_t>(done + 1), static_cast<std::int64_t>(upto));
        done = upto;
        out.push_back({upto, count});
    };
    for (std::uint64_t i = 1; i * i <= n; ++i)
        advance(i * i);
    if (out.back().n != n)
        advance(n);
    return out;
}

std::vector<Checkpoint> density(const SequenceSpec& spec, std::uint64_t n) {
    require_n(n);
    return density(window_for(spec, static_cast<std::int64_t>(n)), n);
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t word_value(const std::string& word) {
    if (word.empty() || word.size() > kMaxWordLength)
        throw InputError("word length must be between 1 and " + std::to_string(kMaxWordLength));
    std::uint64_t v = 0;
    for (char ch : word) {
        if (ch != '0' && ch != '1')
            throw InputError("words are strings over {0,1}, got \"" + word + "\"");
        v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
    }
    return v;
}

} // namespace

std::uint64_t WordFrequencies::count(const std::string& word) const {
    const std::uint64_t v = word_value(word);
    if (word.size() > max_len)
        throw InputError("word longer than the counted maximum " + std::to_string(max_len));
    return counts[word.size()][v];
}

Rational WordFrequencies::frequency(const std::string& word) const {
    return Rational(Integer(count(word)), Integer(n));
}

double WordFrequencies::max_deviation(unsigned len) const {
    if (len == 0 || len > max_len)
        throw InputError("word length out of range");
    const double target = std::ldexp(1.0, -static_cast<int>(len));
    double worst = 0;
    for (auto c : counts[len])
        worst = std::max(worst, std::abs(static_cast<double>(c) / static_cast<double>(n) - target));
    return worst;
}

WordFrequencies word_frequencies(const BitWindow& w, std::uint64_t n, unsigned max_len) {
    require_n(n);
    if (max_len == 0 || max_len > kMaxWordLength)
        throw InputError("max_len must be between 1 and " + std::to_string(kMaxWordLength));
    Packed p(w);
    p.require(1, static_cast<std::int64_t>(n));
    WordFrequencies out;
    out.n = n;
    out.max_len = max_len;
    out.counts.resize(max_len + 1);
    for (unsigned len = 1; len <= max_len; ++len)
        out.counts[len].assign(std::size_t{1} << len, 0);

    // reg holds the last max_len bits; the newest bit is the least significant.
    std::uint64_t reg = 0;
    for (std::uint64_t pos = 1; pos <= n; ++pos) {
        reg = ((reg << 1) | static_cast<std::uint64_t>(p.get(static_cast<std::int64_t>(pos)))) & low_mask(max_len);
        const unsigned top = static_cast<unsigned>(std::min<std::uint64_t>(pos, max_len));
        for (unsigned len = 1; len <= top; ++len)
            ++out.counts[len][reg & low_mask(len)];
    }
    return out;
}

WordFrequencies word_frequencies(const SequenceSpec& spec, std::uint64_t n, unsigned max_len) {
    require_n(n);
    return word_frequencies(window_for(spec, static_cast<std::int64_t>(n)), n, max_len);
}

// ---------------------------------------------------------------------------

namespace {

void validate_shifts(const std::vector<std::uint64_t>& shifts) {
    for (std::size_t t = 0; t < shifts.size(); ++t) {
        if (shifts[t] == 0)
            throw InputError("correlation shifts must be positive");
        if (t > 0 && shifts[t] <= shifts[t - 1])
            throw InputError("correlation shifts must be strictly increasing");
        if (shifts[t] > kMaxWindow)
            throw InputError("correlation shift too large");
    }
}

} // namespace

Rational chi_correlation(const BitWindow& w, const CorrelationQuery& q) {
    require_n(q.n);
    validate_shifts(q.shifts);
    const std::uint64_t reach = q.shifts.empty() ? 0 : q.shifts.back();
    Packed p(w);
    p.require(1, static_cast<std::int64_t>(q.n + reach));

    // prod chi = (-1)^{#non-members} = (-1)^{k+1} (-1)^{#members}.
    const std::uint64_t chunks = chunk_count(1, q.n + 1, kChunk);
    std::vector<std::uint64_t> odd(chunks, 0);
    for_each_chunk(1, q.n + 1, kChunk, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t local = 0;
        for (std::uint64_t x = lo; x < hi; x += 64) {
            std::uint64_t v = p.get64(static_cast<std::int64_t>(x));
            for (auto s : q.shifts)
                v ^= p.get64(static_cast<std::int64_t>(x + s));
            local += static_cast<std::uint64_t>(std::popcount(v & low_mask(hi - x)));
        }
        odd[c] = local;
    });
    std::uint64_t total_odd = 0;
    for (auto o : odd)
        total_odd += o;
    Integer sum = Integer(q.n) - 2 * Integer(total_odd);
    if (q.shifts.size() % 2 == 0)
        sum = -sum;
    return Rational(sum, Integer(q.n));
}

Rational chi_correlation(const SequenceSpec& spec, const CorrelationQuery& q) {
    require_n(q.n);
    validate_shifts(q.shifts);
    const std::uint64_t reach = q.shifts.empty() ? 0 : q.shifts.back();
    return chi_correlation(window_for(spec, static_cast<std::int64_t>(q.n + reach)), q);
}

// ---------------------------------------------------------------------------

namespace {

// Scaled centered value X * xi(x) = X * 1_A(x) - K, zero below index 1.
struct Centered {
    const Packed* bits = nullptr;
    std::int64_t x_scale = 1; ///< X, the window length
    std::int64_t k_count = 0; ///< K, members in [1, X]

    std::int64_t at(std::int64_t x) const {
        if (x < 1)
            return 0;
        return (bits->get(x) ? x_scale : 0) - k_count;
    }
};

// sum of prod_t values, computed in Acc (i128 or Integer).
template <typename Acc, typename Fn> Acc product_sum(std::uint64_t lo, std::uint64_t hi, std::size_t k, Fn&& value) {
    Acc total = 0;
    for (std::uint64_t m = lo; m <= hi; ++m) {
        Acc term = 1;
        for (std::size_t i = 0; i < k && term != 0; ++i)
            term *= value(i, m);
        total += term;
    }
    return total;
}

Integer to_integer(i128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    Integer r = Integer(static_cast<std::uint64_t>(u >> 64));
    r <<= 64;
    r += Integer(static_cast<std::uint64_t>(u));
    return neg ? Integer(-r) : r;
}

double to_double_sqrt(const Rational& r) { return std::sqrt(static_cast<double>(r)); }

} // namespace

ProductNorms averaged_product_norm(const ProductAverageQuery& q) {
    const std::size_t k = q.pairs.size();
    if (k == 0)
        throw InputError("at least one (a_i, b_i) pair is required");
    if (q.m == 0 || q.n == 0)
        throw InputError("M and N must be at least 1");
    if (!q.shifts.empty() && q.shifts.size() != k)
        throw InputError("shift vector length must match the number of pairs");
    if (q.sequences.size() != 1 && q.sequences.size() != k)
        throw InputError("supply one sequence per factor or a single shared sequence");
    for (std::size_t i = 0; i < k; ++i)
        if (q.pairs[i].first <= 0)
            throw InputError("a_i must be positive");
    if (q.require_nonsingular)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                const i128 det = static_cast<i128>(q.pairs[i].first) * q.pairs[j].second -
                                 static_cast<i128>(q.pairs[i].second) * q.pairs[j].first;
                if (det == 0)
                    throw InputError("pairs " + std::to_string(i) + " and " + std::to_string(j) +
                                     " have vanishing determinant");
            }

    auto shift = [&](std::size_t i) -> std::int64_t { return q.shifts.empty() ? 0 : q.shifts[i]; };
    // Largest index of each factor, attained at a corner of [1,N] x [1,M].
    std::vector<std::int64_t> last(k);
    for (std::size_t i = 0; i < k; ++i) {
        i128 best = std::numeric_limits<std::int64_t>::min();
        for (std::uint64_t n : {std::uint64_t{1}, q.n})
            for (std::uint64_t m : {std::uint64_t{1}, q.m})
                best = std::max(best, static_cast<i128>(q.pairs[i].first) * n +
                                          static_cast<i128>(q.pairs[i].second) * m + shift(i));
        last[i] = std::max<std::int64_t>(checked_index(best), 1);
    }

    // One window per distinct sequence.
    std::vector<Packed> windows;
    std::vector<std::size_t> owner(k);
    std::vector<std::int64_t> scale, members;
    if (q.sequences.size() == 1) {
        const std::int64_t x = *std::max_element(last.begin(), last.end());
        const auto w = window_for(q.sequences[0], x);
        windows.emplace_back(w);
        scale.push_back(x);
        members.push_back(static_cast<std::int64_t>(w.popcount()));
    } else {
        for (std::size_t i = 0; i < k; ++i) {
            const auto w = window_for(q.sequences[i], last[i]);
            windows.emplace_back(w);
            owner[i] = i;
            scale.push_back(last[i]);
            members.push_back(static_cast<std::int64_t>(w.popcount()));
        }
    }
    std::vector<Centered> xi(k);
    ProductNorms out;
    Integer denom_scale = 1; // prod_i X_i
    unsigned bits = bit_width_u(q.m);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t o = owner[i];
        xi[i] = Centered{&windows[o], scale[o], members[o]};
        out.densities.emplace_back(Integer(members[o]), Integer(scale[o]));
        denom_scale *= scale[o];
        bits += bit_width_u(static_cast<std::uint64_t>(scale[o]));
    }
    const bool narrow = bits <= 125;

    const std::size_t chunks = chunk_count(1, q.n + 1, kChunk / 16);
    std::vector<Integer> w_sq(chunks);
    std::vector<std::uint64_t> v_sq(chunks, 0);
    for_each_chunk(1, q.n + 1, kChunk / 16, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
        Integer local_w = 0;
        std::uint64_t local_v = 0;
        for (std::uint64_t n = lo; n < hi; ++n) {
            auto index = [&](std::size_t i, std::uint64_t m) {
                return q.pairs[i].first * static_cast<std::int64_t>(n) +
                       q.pairs[i].second * static_cast<std::int64_t>(m) + shift(i);
            };
            std::uint64_t hits = 0;
            for (std::uint64_t m = 1; m <= q.m; ++m) {
                bool all = true;
                for (std::size_t i = 0; i < k && all; ++i)
                    all = xi[i].bits->get(index(i, m));
                hits += all;
            }
            local_v += hits * hits;
            auto value = [&](std::size_t i, std::uint64_t m) { return xi[i].at(index(i, m)); };
            if (narrow) {
                const i128 s = product_sum<i128>(1, q.m, k, value);
                local_w += to_integer(s) * to_integer(s);
            } else {
                const Integer s = product_sum<Integer>(1, q.m, k, [&](std::size_t i, std::uint64_t m) {
                    return Integer(value(i, m));
                });
                local_w += s * s;
            }
        }
        w_sq[c] = std::move(local_w);
        v_sq[c] = local_v;
    });
    Integer total_w = 0;
    Integer total_v = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        total_w += w_sq[c];
        total_v += v_sq[c];
    }
    const Integer mm = Integer(q.m) * Integer(q.m);
    out.norm_w_squared = Rational(total_w, Integer(q.n) * mm * denom_scale * denom_scale);
    out.norm_v_squared = Rational(total_v, Integer(q.n) * mm);
    out.norm_w = to_double_sqrt(out.norm_w_squared);
    out.norm_v = to_double_sqrt(out.norm_v_squared);
    return out;
}

// ---------------------------------------------------------------------------

SubsampleResult subsample_compare(const SequenceSpec& spec, std::uint64_t a, const std::vector<std::int64_t>& shifts,
                                  std::uint64_t n) {
    require_n(n);
    if (a == 0)
        throw InputError("subsampling step a must be at least 1");
    const std::size_t k = shifts.size();
    SubsampleResult out;
    if (k == 0) {
        out.full = out.subsampled = 1;
        out.difference = 0;
        return out;
    }
    const std::int64_t reach = *std::max_element(shifts.begin(), shifts.end());
    const std::int64_t x = std::max<std::int64_t>(checked_index(static_cast<i128>(a) * n + reach), 1);
    const auto w = window_for(spec, x);
    const Packed p(w);
    const Centered xi{&p, x, static_cast<std::int64_t>(w.popcount())};

    const unsigned bits = bit_width_u(n) + static_cast<unsigned>(k) * bit_width_u(static_cast<std::uint64_t>(x));
    auto averaged = [&](std::uint64_t step) {
        const std::size_t chunks = chunk_count(1, n + 1, kChunk);
        std::vector<Integer> part(chunks);
        for_each_chunk(1, n + 1, kChunk, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
            auto value = [&](std::size_t t, std::uint64_t idx) {
                return xi.at(static_cast<std::int64_t>(step * idx) + shifts[t]);
            };
            if (bits <= 125)
                part[c] = to_integer(product_sum<i128>(lo, hi - 1, k, value));
            else
                part[c] = product_sum<Integer>(lo, hi - 1, k,
                                               [&](std::size_t t, std::uint64_t idx) { return Integer(value(t, idx)); });
        });
        Integer total = 0;
        for (auto& v : part)
            total += v;
        return Rational(total, Integer(n) * boost::multiprecision::pow(Integer(x), static_cast<unsigned>(k)));
    };
    out.full = averaged(1);
    out.subsampled = averaged(a);
    out.difference = out.full - out.subsampled;
    return out;
}

// ---------------------------------------------------------------------------

VdcReport vdc_check(const std::vector<std::vector<double>>& vectors, double eps, std::size_t i_max, std::size_t j) {
    if (!(eps > 0))
        throw InputError("eps must be positive");
    if (i_max == 0 || j == 0)
        throw InputError("I and J must be at least 1");
    if (vectors.size() < i_max + j)
        throw InputError("need " + std::to_string(i_max + j) + " vectors, got " + std::to_string(vectors.size()));
    const std::size_t dim = vectors.front().size();
    for (std::size_t t = 0; t < i_max + j; ++t) {
        if (vectors[t].size() != dim)
            throw InputError("vectors must share one dimension");
        double sq = 0;
        for (double v : vectors[t])
            sq += v * v;
        if (sq > 1.0 + 1e-12)
            throw InputError("vector " + std::to_string(t + 1) + " has norm above 1");
    }

    VdcReport rep;
    rep.correlations.assign(i_max, 0.0);
    for (std::size_t i = 1; i <= i_max; ++i) {
        double acc = 0;
        for (std::size_t t = 0; t < j; ++t) {
            const auto& u = vectors[t];
            const auto& v = vectors[t + i];
            double dot = 0;
            for (std::size_t d = 0; d < dim; ++d)
                dot += u[d] * v[d];
            acc += dot;
        }
        rep.correlations[i - 1] = acc / static_cast<double>(j);
    }
    const auto good = std::count_if(rep.correlations.begin(), rep.correlations.end(),
                                    [&](double c) { return std::abs(c) < eps / 2; });
    rep.good_fraction = static_cast<double>(good) / static_cast<double>(i_max);
    rep.hypothesis_held = rep.good_fraction >= 1.0 - eps / 3.0;

    std::vector<double> avg(dim, 0.0);
    for (std::size_t t = 0; t < j; ++t)
        for (std::size_t d = 0; d < dim; ++d)
            avg[d] += vectors[t][d];
    double sq = 0;
    for (double v : avg) {
        const double a = v / static_cast<double>(j);
        sq += a * a;
    }
    rep.average_norm = std::sqrt(sq);
    rep.conclusion_held = rep.average_norm < eps;
    rep.squared_bound_held = sq < eps;
    rep.in_threshold_regime = static_cast<double>(i_max) >= 12.0 / eps && 11 * (j + i_max) < 12 * j;
    return rep;
}

// ---------------------------------------------------------------------------

std::vector<PatternHit> search_pattern(const std::vector<SequenceSpec>& sequences, const std::vector<std::int64_t>& a,
                                       const std::vector<std::int64_t>& b, const std::vector<std::int64_t>& f,
                                       std::uint64_t n_max, std::uint64_t m_max, bool first_only) {
    const std::size_t k = a.size();
    if (k == 0 || b.size() != k || f.size() != k)
        throw InputError("a, b, f must be nonempty vectors of equal length");
    if (sequences.size() != 1 && sequences.size() != k)
        throw InputError("supply one sequence per coordinate or a single shared sequence");
    if (n_max == 0 || m_max == 0)
        throw InputError("search bounds must be positive");
    if (n_max > kMaxWindow || m_max > kMaxWindow)
        throw InputError("search bounds too large");

    std::vector<std::int64_t> last(k);
    for (std::size_t i = 0; i < k; ++i) {
        i128 best = std::numeric_limits<std::int64_t>::min();
        for (std::uint64_t n : {std::uint64_t{1}, n_max})
            for (std::uint64_t m : {std::uint64_t{1}, m_max})
                best = std::max(best, static_cast<i128>(a[i]) * n + static_cast<i128>(b[i]) * m + f[i]);
        last[i] = checked_index(best);
    }
    std::vector<Packed> windows;
    std::vector<std::size_t> owner(k, 0);
    if (sequences.size() == 1) {
        windows.emplace_back(window_for(sequences[0], *std::max_element(last.begin(), last.end())));
    } else {
        for (std::size_t i = 0; i < k; ++i) {
            windows.emplace_back(window_for(sequences[i], last[i]));
            owner[i] = i;
        }
    }

    // Each row n is an AND of k strided reads over m.
    const std::uint64_t row_words = (m_max + 63) / 64;
    const std::uint64_t row_chunk = 64;
    const std::size_t chunks = chunk_count(1, n_max + 1, row_chunk);
    std::vector<std::vector<PatternHit>> found(chunks);
    for_each_chunk(1, n_max + 1, row_chunk, [&](std::size_t c, std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint64_t> row(row_words);
        for (std::uint64_t n = lo; n < hi; ++n) {
            std::fill(row.begin(), row.end(), ~std::uint64_t{0});
            bool alive = true;
            for (std::size_t i = 0; i < k && alive; ++i) {
                const Packed& p = windows[owner[i]];
                const std::int64_t base = a[i] * static_cast<std::int64_t>(n) + f[i];
                if (b[i] == 0) {
                    alive = p.get(base);
                } else if (b[i] == 1) {
                    for (std::uint64_t wi = 0; wi < row_words; ++wi)
                        row[wi] &= p.get64(base + 1 + static_cast<std::int64_t>(64 * wi));
                } else {
                    for (std::uint64_t wi = 0; wi < row_words; ++wi) {
                        if (row[wi] == 0)
                            continue;
                        std::uint64_t bitsv = 0;
                        for (unsigned t = 0; t < 64; ++t) {
                            const std::int64_t m = static_cast<std::int64_t>(64 * wi + t + 1);
                            bitsv |= std::uint64_t{p.get(base + b[i] * m)} << t;
                        }
                        row[wi] &= bitsv;
                    }
                }
            }
            if (!alive)
                continue;
            row.back() &= low_mask(m_max - 64 * (row_words - 1));
            for (std::uint64_t wi = 0; wi < row_words; ++wi) {
                std::uint64_t v = row[wi];
                while (v != 0) {
                    const unsigned t = static_cast<unsigned>(std::countr_zero(v));
                    found[c].push_back({n, 64 * wi + t + 1});
                    if (first_only)
                        return;
                    v &= v - 1;
                }
            }
        }
    });
    std::vector<PatternHit> hits;
    for (auto& part : found) {
        if (first_only && !part.empty())
            return {part.front()};
        hits.insert(hits.end(), part.begin(), part.end());
    }
    return hits;
}

// ---------------------------------------------------------------------------

std::vector<bool> difference_covers(const BitWindow& w, std::uint64_t c_max, std::uint64_t n) {
    require_n(n);
    if (c_max == 0 || 2 * c_max > n)
        throw InputError("c_max must satisfy 1 <= c_max <= N/2");
    Packed p(w);
    p.require(1, static_cast<std::int64_t>(n));
    std::vector<bool> out(c_max, false);
    for (std::uint64_t c = 1; c <= c_max; ++c) {
        const std::uint64_t top = n - c; // n' in [1, top]
        for (std::uint64_t x = 1; x <= top; x += 64) {
            const std::uint64_t both = p.get64(static_cast<std::int64_t>(x)) &
                                       p.get64(static_cast<std::int64_t>(x + c)) & low_mask(top - x + 1);
            if (both != 0) {
                out[c - 1] = true;
                break;
            }
        }
    }
    return out;
}

std::vector<bool> difference_covers(const SequenceSpec& spec, std::uint64_t c_max, std::uint64_t n) {
    require_n(n);
    return difference_covers(window_for(spec, static_cast<std::int64_t>(n)), c_max, n);
}

} // namespace wmlab::stats
