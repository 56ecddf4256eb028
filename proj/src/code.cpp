#include "symeq/code.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <string_view>
#include <unordered_set>

#include "symeq/error.hpp"

namespace symeq {

namespace {

void check_shape(int n, int q) {
    if (n < 1) throw Error(ErrorCode::invalid_argument, "code length must be positive");
    if (q < 1 || q > kMaxAlphabet)
        throw Error(ErrorCode::invalid_argument,
                    "alphabet size must lie in [1," + std::to_string(kMaxAlphabet) + "]");
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Words packed as bytes into 64-bit lanes; distance counts nonzero bytes of
// the xor.
class PackedWords {
public:
    explicit PackedWords(const Code& code)
        : lanes_(static_cast<std::size_t>((code.length() + 7) / 8)), data_(code.size() * lanes_, 0) {
        for (std::size_t w = 0; w < code.size(); ++w) {
            auto word = code.word(w);
            for (std::size_t i = 0; i < word.size(); ++i)
                data_[w * lanes_ + i / 8] |= std::uint64_t{word[i]} << (8 * (i % 8));
        }
    }

    int distance(std::size_t a, std::size_t b) const {
        constexpr std::uint64_t low7 = 0x7f7f7f7f7f7f7f7fULL;
        constexpr std::uint64_t high = 0x8080808080808080ULL;
        const std::uint64_t* pa = &data_[a * lanes_];
        const std::uint64_t* pb = &data_[b * lanes_];
        int d = 0;
        for (std::size_t l = 0; l < lanes_; ++l) {
            std::uint64_t x = pa[l] ^ pb[l];
            std::uint64_t nz = (((x & low7) + low7) | x) & high;
            d += std::popcount(nz);
        }
        return d;
    }

private:
    std::size_t lanes_;
    std::vector<std::uint64_t> data_;
};

}  // namespace

Code::Code(int n, int q, std::vector<Symbol> symbols, std::string id)
    : n_(n), q_(q), symbols_(std::move(symbols)), id_(std::move(id)) {
    check_shape(n, q);
    if (symbols_.empty() || symbols_.size() % static_cast<std::size_t>(n) != 0)
        throw Error(ErrorCode::invalid_argument, "code needs at least one word of length n");
    for (Symbol s : symbols_)
        if (s >= q)
            throw Error(ErrorCode::invalid_codeword,
                        "symbol " + std::to_string(int{s}) + " outside [0," + std::to_string(q) + ")");
    std::unordered_set<std::string_view> seen;
    seen.reserve(size() * 2);
    const auto* base = reinterpret_cast<const char*>(symbols_.data());
    for (std::size_t w = 0; w < size(); ++w) {
        if (!seen.emplace(base + w * static_cast<std::size_t>(n), static_cast<std::size_t>(n)).second)
            throw Error(ErrorCode::invalid_codeword, "duplicate codeword at index " + std::to_string(w));
    }
}

Code Code::from_words(int n, int q, const std::vector<std::vector<int>>& words, std::string id) {
    check_shape(n, q);
    std::vector<Symbol> flat;
    flat.reserve(words.size() * static_cast<std::size_t>(n));
    for (const auto& w : words) {
        if (static_cast<int>(w.size()) != n)
            throw Error(ErrorCode::invalid_codeword, "codeword length differs from n");
        for (int s : w) {
            if (s < 0 || s >= q)
                throw Error(ErrorCode::invalid_codeword,
                            "symbol " + std::to_string(s) + " outside [0," + std::to_string(q) + ")");
            flat.push_back(static_cast<Symbol>(s));
        }
    }
    return Code(n, q, std::move(flat), std::move(id));
}

std::span<const Symbol> Code::word(std::size_t index) const {
    if (index >= size()) throw Error(ErrorCode::out_of_range, "codeword index out of range");
    return {symbols_.data() + index * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
}

SymbolStats symbol_stats(std::span<const Symbol> word, int q) {
    if (q < 1 || q > kMaxAlphabet) throw Error(ErrorCode::invalid_argument, "bad alphabet size");
    SymbolStats stats;
    stats.counts.assign(static_cast<std::size_t>(q), 0);
    for (Symbol s : word) {
        if (s >= q)
            throw Error(ErrorCode::invalid_codeword,
                        "symbol " + std::to_string(int{s}) + " outside [0," + std::to_string(q) + ")");
        ++stats.counts[s];
    }
    stats.partition = stats.counts;
    std::sort(stats.partition.begin(), stats.partition.end(), std::greater<>());
    stats.swt = stats.partition.front();
    return stats;
}

int hamming(std::span<const Symbol> a, std::span<const Symbol> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::invalid_argument, "length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

bool is_equitable_word(std::span<const Symbol> word, int q) {
    const int n = static_cast<int>(word.size());
    const int lo = n / q;
    const int hi = ceil_div(n, q);
    auto stats = symbol_stats(word, q);
    return std::all_of(stats.counts.begin(), stats.counts.end(),
                       [&](int c) { return c == lo || c == hi; });
}

ClassLabel classify(const Code& code) {
    const int n = code.length();
    const int q = code.alphabet();
    const int r_min = ceil_div(n, q);

    ClassLabel label;
    label.constant_composition = true;
    label.constant_partition = true;
    label.minimum_symbol_weight = true;
    label.equitable = true;

    std::vector<int> first_counts;
    std::vector<int> first_partition;
    for (std::size_t w = 0; w < code.size(); ++w) {
        auto stats = symbol_stats(code.word(w), q);
        label.bounded_symbol_weight = std::max(label.bounded_symbol_weight, stats.swt);
        if (w == 0) {
            first_counts = stats.counts;
            first_partition = stats.partition;
        } else {
            label.constant_composition &= stats.counts == first_counts;
            label.constant_partition &= stats.partition == first_partition;
        }
        label.minimum_symbol_weight &= stats.swt == r_min;
        label.equitable &= is_equitable_word(code.word(w), q);
    }

    // FPA: constant partition <(n/q)^q>; injection: constant partition <1^n 0^(q-n)>.
    label.fpa = label.constant_partition && n % q == 0 &&
                std::all_of(first_partition.begin(), first_partition.end(),
                            [&](int c) { return c == n / q; });
    label.injection = label.constant_partition && n <= q && first_partition.front() == 1;
    label.permutation = label.fpa && label.injection && n == q;
    return label;
}

int min_distance(const Code& code) {
    if (code.size() < 2)
        throw Error(ErrorCode::undefined_distance, "minimum distance needs at least two codewords");
    PackedWords packed(code);
    int best = code.length();
    const std::size_t m = code.size();
    for (std::size_t a = 0; a + 1 < m && best > 1; ++a)
        for (std::size_t b = a + 1; b < m; ++b) best = std::min(best, packed.distance(a, b));
    return best;
}

std::vector<int> narrowband_profile(const Code& code) {
    const int q = code.alphabet();
    std::vector<int> table(static_cast<std::size_t>(q), 0);
    for (std::size_t w = 0; w < code.size(); ++w) {
        auto stats = symbol_stats(code.word(w), q);
        int running = 0;
        for (int e = 0; e < q; ++e) {
            running += stats.partition[static_cast<std::size_t>(e)];
            table[static_cast<std::size_t>(e)] = std::max(table[static_cast<std::size_t>(e)], running);
        }
    }
    return table;
}

std::optional<int> first_reaching(std::span<const int> table, int d) {
    for (std::size_t e = 0; e < table.size(); ++e)
        if (table[e] >= d) return static_cast<int>(e + 1);
    return std::nullopt;
}

CapabilityProfile capability_profile(const Code& code, int d) {
    if (d < 1) throw Error(ErrorCode::invalid_argument, "distance must be positive");
    CapabilityProfile profile;
    profile.n = code.length();
    profile.q = code.alphabet();
    profile.d = d;
    profile.e_table = narrowband_profile(code);
    profile.capability = first_reaching(profile.e_table, d);
    return profile;
}

std::vector<int> equitable_partition(int n, int q) {
    check_shape(n, q);
    const int r = ceil_div(n, q);
    const int t = q * r - n;
    std::vector<int> partition(static_cast<std::size_t>(q - t), r);
    partition.insert(partition.end(), static_cast<std::size_t>(t), r - 1);
    return partition;
}

int f_star(int n, int q, int e) {
    check_shape(n, q);
    if (e < 1 || e > q)
        throw Error(ErrorCode::out_of_range, "e must lie in [1," + std::to_string(q) + "]");
    const int r = ceil_div(n, q);
    const int t = q * r - n;
    if (e <= q - t) return r * e;
    return r * (q - t) + (e - q + t) * (r - 1);
}

std::vector<int> f_star_table(int n, int q) {
    std::vector<int> table;
    for (int e = 1; e <= q; ++e) table.push_back(f_star(n, q, e));
    return table;
}

GrowthOrder growth_compare(std::span<const int> f, std::span<const int> g) {
    if (f.size() != g.size()) throw Error(ErrorCode::invalid_argument, "growth tables differ in length");
    for (std::size_t e = 0; e < f.size(); ++e) {
        if (f[e] == g[e]) continue;
        return {f[e] < g[e] ? GrowthOrder::Kind::f_less : GrowthOrder::Kind::g_less, static_cast<int>(e + 1)};
    }
    return {};
}

GrowthOrder growth_compare(const CapabilityProfile& f, const CapabilityProfile& g) {
    if (f.n != g.n || f.q != g.q)
        throw Error(ErrorCode::invalid_argument, "growth order is only defined within one (n,q) family");
    return growth_compare(f.e_table, g.e_table);
}

std::vector<int> windowed_profile(const Code& code, std::span<const int> durations) {
    if (durations.empty()) throw Error(ErrorCode::invalid_argument, "duration set is empty");
    for (int l : durations)
        if (l < 1) throw Error(ErrorCode::invalid_argument, "durations must be positive");

    const int n = code.length();
    const int q = code.alphabet();
    std::vector<int> table(static_cast<std::size_t>(q), 0);
    std::vector<int> prefix(static_cast<std::size_t>(n + 1));
    std::vector<int> coverage(static_cast<std::size_t>(q));

    for (std::size_t w = 0; w < code.size(); ++w) {
        auto word = code.word(w);
        for (int l : durations) {
            for (int s = 0; s < q; ++s) {
                prefix[0] = 0;
                for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + (word[i] == s);
                // Windows [start, start+l-1] clipped to [0, n-1], start in [1-l, n-1].
                int best = 0;
                for (int start = 1 - l; start < n; ++start) {
                    const int lo = std::max(start, 0);
                    const int hi = std::min(start + l, n);
                    best = std::max(best, prefix[hi] - prefix[lo]);
                }
                coverage[static_cast<std::size_t>(s)] = best;
            }
            std::sort(coverage.begin(), coverage.end(), std::greater<>());
            int running = 0;
            for (int e = 0; e < q; ++e) {
                running += coverage[static_cast<std::size_t>(e)];
                table[static_cast<std::size_t>(e)] = std::max(table[static_cast<std::size_t>(e)], running);
            }
        }
    }
    return table;
}

int windowed_capability(const Code& code, int e, std::span<const int> durations) {
    if (e < 1 || e > code.alphabet()) throw Error(ErrorCode::out_of_range, "e outside [1,q]");
    return windowed_profile(code, durations)[static_cast<std::size_t>(e - 1)];
}

}  // namespace symeq
