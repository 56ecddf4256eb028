#include "symeq/construct.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "kirkman.hpp"
#include "symeq/error.hpp"

namespace symeq {

namespace {

std::string join(const std::vector<int>& v, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

int code_swt(const Code& code) {
    int r = 0;
    for (std::size_t w = 0; w < code.size(); ++w) r = std::max(r, symbol_stats(code.word(w), code.alphabet()).swt);
    return r;
}

std::string provenance(const std::string& method, const ConstructionTarget& t, const Code& code,
                       const std::string& extra = {}) {
    std::ostringstream out;
    out << "target=" << method << " n=" << t.n << " q=" << t.q << " d_min=" << t.d_min
        << " size=" << t.size_target << " r=" << t.r;
    if (t.partition) out << " partition=" << join(*t.partition);
    out << " seed=" << t.seed;
    if (!extra.empty()) out << ' ' << extra;
    out << " achieved_size=" << code.size() << " achieved_swt=" << code_swt(code);
    if (code.size() >= 2) out << " achieved_d=" << min_distance(code);
    return out.str();
}

void check_target(const ConstructionTarget& t) {
    if (t.n < 1 || t.q < 1 || t.q > kMaxAlphabet)
        throw Error(ErrorCode::invalid_argument, "target needs n >= 1 and q in [1,64]");
    if (t.size_target < 1) throw Error(ErrorCode::invalid_argument, "size target must be at least 1");
    if (t.d_min < 1 || t.d_min > t.n) throw Error(ErrorCode::invalid_argument, "d_min must lie in [1,n]");
}

std::vector<int> normalized_partition(const ConstructionTarget& t) {
    if (!t.partition) throw Error(ErrorCode::invalid_argument, "partition target missing");
    std::vector<int> part = *t.partition;
    if (static_cast<int>(part.size()) > t.q) throw Error(ErrorCode::invalid_argument, "partition has more than q parts");
    for (int c : part)
        if (c < 0) throw Error(ErrorCode::invalid_argument, "partition parts must be nonnegative");
    if (std::accumulate(part.begin(), part.end(), 0) != t.n)
        throw Error(ErrorCode::invalid_argument, "partition must sum to n");
    part.resize(static_cast<std::size_t>(t.q), 0);
    std::sort(part.begin(), part.end(), std::greater<>());
    return part;
}

int distance_at_least(const Symbol* a, const Symbol* b, int n, int bound) {
    int d = 0;
    for (int i = 0; i < n && d < bound; ++i) d += a[i] != b[i];
    return d;
}

// Swt of the translate base + v, abandoning once `stop` is reached.
int coset_swt(const ReedSolomon& base, const std::vector<int>& v, int stop) {
    const int q = base.field.order();
    int worst = 0;
    std::vector<int> counts(static_cast<std::size_t>(q));
    for (std::size_t w = 0; w < base.code.size() && worst < stop; ++w) {
        auto word = base.code.word(w);
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < base.n; ++i) {
            const int c = ++counts[static_cast<std::size_t>(base.field.add(word[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]))];
            worst = std::max(worst, c);
        }
    }
    return worst;
}

Code translate(const ReedSolomon& base, const std::vector<int>& v) {
    std::vector<Symbol> symbols(base.code.symbols().size());
    const auto& src = base.code.symbols();
    for (std::size_t j = 0; j < src.size(); ++j)
        symbols[j] = static_cast<Symbol>(base.field.add(src[j], v[j % static_cast<std::size_t>(base.n)]));
    return Code(base.n, base.field.order(), std::move(symbols));
}

Code greedy_partition_code(const ConstructionTarget& t, const std::vector<int>& part, std::uint64_t budget) {
    std::vector<Symbol> tmpl;
    for (std::size_t s = 0; s < part.size(); ++s)
        tmpl.insert(tmpl.end(), static_cast<std::size_t>(part[s]), static_cast<Symbol>(s));
    std::vector<Symbol> relabel(static_cast<std::size_t>(t.q));
    std::iota(relabel.begin(), relabel.end(), Symbol{0});

    std::mt19937_64 rng(t.seed);
    std::vector<Symbol> accepted;
    std::vector<Symbol> cand(tmpl.size());
    std::size_t count = 0;
    for (std::uint64_t tries = 0; tries < budget && count < t.size_target; ++tries) {
        std::shuffle(tmpl.begin(), tmpl.end(), rng);
        std::shuffle(relabel.begin(), relabel.end(), rng);
        for (std::size_t i = 0; i < tmpl.size(); ++i) cand[i] = relabel[tmpl[i]];
        bool ok = true;
        for (std::size_t w = 0; w < count && ok; ++w)
            ok = distance_at_least(cand.data(), accepted.data() + w * cand.size(), t.n, t.d_min) >= t.d_min;
        if (!ok) continue;
        accepted.insert(accepted.end(), cand.begin(), cand.end());
        ++count;
    }
    if (count < t.size_target)
        throw Error(ErrorCode::construction_failed,
                    "partition search reached " + std::to_string(count) + " of " +
                        std::to_string(t.size_target) + " words within budget");
    return Code(t.n, t.q, std::move(accepted));
}

bool kirkman_shape(const ConstructionTarget& t) {
    return t.n % 6 == 1 && 3 * t.q == 2 * t.n + 1 && t.size_target <= static_cast<std::size_t>(2 * t.n + 1) &&
           t.d_min <= t.n - 1;
}

std::optional<Construction> kirkman_partition_code(const ConstructionTarget& t, const std::vector<int>& part) {
    if (!kirkman_shape(t)) return std::nullopt;
    auto ks = detail::kirkman_system(t.n);
    if (!ks) return std::nullopt;
    const int nb = ks->blocks;
    const std::uint64_t iterations = t.budget ? t.budget : 20'000'000;

    std::mt19937_64 rng(t.seed);
    std::vector<int> start(static_cast<std::size_t>(ks->v * nb));
    for (int g = 0; g < ks->v; ++g) std::iota(start.begin() + g * nb, start.begin() + (g + 1) * nb, 0);
    const auto equitable = equitable_partition(t.n, t.q);
    const bool want_equitable = part == equitable;

    // Equitable labelling first; it seeds the partition attempt.
    detail::LabelResult esw{start, 1};
    for (int attempt = 0; attempt < 16 && esw.cost != 0; ++attempt)
        esw = detail::anneal_labels(*ks, {equitable}, start, rng(), std::max<std::uint64_t>(iterations / 4, 1));
    if (esw.cost != 0) return std::nullopt;
    if (want_equitable) {
        Code code = detail::kirkman_code(*ks, esw.labels, t.size_target);
        return Construction{code, provenance("partition", t, code, "method=kirkman partition=exact")};
    }

    auto exact = detail::anneal_labels(*ks, {part, true, 4.0, 1.0}, esw.labels, rng(), iterations / 4);
    Code code = detail::kirkman_code(*ks, exact.labels, t.size_target);
    std::size_t matching = 0;
    for (std::size_t w = 0; w < code.size(); ++w)
        matching += symbol_stats(code.word(w), t.q).partition == part;
    if (matching == code.size())
        return Construction{code, provenance("partition", t, code, "method=kirkman partition=exact")};
    if (!t.relax_partition || matching == 0)
        throw Error(ErrorCode::construction_failed,
                    "labelling search met the partition on " + std::to_string(matching) + " of " +
                        std::to_string(code.size()) + " words");
    return Construction{code, provenance("partition", t, code,
                                         "method=kirkman partition=relaxed words_on_partition=" +
                                             std::to_string(matching))};
}

// Candidate injection pools, each with a guaranteed minimum distance.
struct Pool {
    std::string name;
    int guaranteed_d = 0;
    std::vector<std::vector<Symbol>> words;
};

std::optional<Pool> rs_injective_pool(int n, int q, int d_min) {
    std::optional<GaloisField> f;
    try {
        f = GaloisField::standard(q);
    } catch (const Error&) {
        return std::nullopt;
    }
    const GaloisField& field = *f;
    if (field.order() != q || n > q - 1) return std::nullopt;
    const int k = n - d_min + 1;
    double total = 1;
    for (int j = 0; j < k; ++j) total *= q;
    if (k < 1 || total > 2e7) return std::nullopt;

    Pool pool{"rs-injective-k" + std::to_string(k), d_min, {}};
    std::vector<int> coeff(static_cast<std::size_t>(k), 0);
    std::vector<Symbol> word(static_cast<std::size_t>(n));
    std::vector<int> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = field.exp(i);
    for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
        long long rest = idx;
        for (int j = 0; j < k; ++j) {
            coeff[static_cast<std::size_t>(j)] = static_cast<int>(rest % q);
            rest /= q;
        }
        std::uint64_t used = 0;
        bool injective = true;
        for (int i = 0; i < n && injective; ++i) {
            int acc = 0;
            for (int j = k - 1; j >= 0; --j) acc = field.add(field.mul(acc, pts[static_cast<std::size_t>(i)]), coeff[static_cast<std::size_t>(j)]);
            injective = !((used >> acc) & 1U);
            used |= std::uint64_t{1} << acc;
            word[static_cast<std::size_t>(i)] = static_cast<Symbol>(acc);
        }
        if (injective) pool.words.push_back(word);
    }
    return pool;
}

// PGL(2,F) acting on F + {infinity}; symbol |F| stands for infinity and the
// coordinates are the first n field elements.
std::optional<Pool> pgl_pool(int n, int q) {
    const int fo = q - 1;
    std::optional<GaloisField> f;
    try {
        f = GaloisField::standard(fo);
    } catch (const Error&) {
        return std::nullopt;
    }
    if (f->order() != fo || n > fo) return std::nullopt;
    const int inf = fo;
    Pool pool{"pgl2", n - 2, {}};
    std::vector<Symbol> word(static_cast<std::size_t>(n));
    // x -> (a x + b) / (c x + d) with ad - bc != 0, normalized so the first
    // nonzero of (c, d) equals one.
    for (int c = 0; c <= 1; ++c) {
        for (int d = 0; d < fo; ++d) {
            if (c == 0 && d != 1) continue;
            for (int a = 0; a < fo; ++a) {
                for (int b = 0; b < fo; ++b) {
                    if (f->sub(f->mul(a, d), f->mul(b, c)) == 0) continue;
                    for (int i = 0; i < n; ++i) {
                        const int x = i;
                        const int num = f->add(f->mul(a, x), b);
                        const int den = f->add(f->mul(c, x), d);
                        word[static_cast<std::size_t>(i)] =
                            static_cast<Symbol>(den == 0 ? inf : f->mul(num, f->inv(den)));
                    }
                    pool.words.push_back(word);
                }
            }
        }
    }
    return pool;
}

std::optional<Pool> alternating_pool(int n, int q) {
    if (q > 9 || q < 3 || n > q) return std::nullopt;
    Pool pool{"alternating", 3 - (q - n), {}};
    if (pool.guaranteed_d < 1) return std::nullopt;
    std::vector<Symbol> perm(static_cast<std::size_t>(q));
    std::iota(perm.begin(), perm.end(), Symbol{0});
    do {
        int inversions = 0;
        for (int i = 0; i < q; ++i)
            for (int j = i + 1; j < q; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
        if (inversions % 2 == 0) pool.words.emplace_back(perm.begin(), perm.begin() + n);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return pool;
}

}  // namespace

ReedSolomon rs_code(const GaloisField& field, int n, int k) {
    const int q = field.order();
    if (n < 1 || n > q - 1)
        throw Error(ErrorCode::invalid_argument, "RS length must lie in [1, q-1]");
    if (k < 1 || k > n) throw Error(ErrorCode::invalid_argument, "RS dimension must lie in [1, n]");
    if (q > kMaxAlphabet) throw Error(ErrorCode::invalid_argument, "field larger than the supported alphabet");
    double total = 1;
    for (int j = 0; j < k; ++j) total *= q;
    if (total > 2e7) throw Error(ErrorCode::invalid_argument, "RS code too large to enumerate");

    const auto count = static_cast<std::size_t>(total);
    std::vector<Symbol> symbols(count * static_cast<std::size_t>(n));
    std::vector<int> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = field.exp(i);
    std::vector<int> coeff(static_cast<std::size_t>(k));
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t rest = idx;
        for (int j = 0; j < k; ++j) {
            coeff[static_cast<std::size_t>(j)] = static_cast<int>(rest % static_cast<std::size_t>(q));
            rest /= static_cast<std::size_t>(q);
        }
        for (int i = 0; i < n; ++i) {
            int acc = 0;
            for (int j = k - 1; j >= 0; --j) acc = field.add(field.mul(acc, pts[static_cast<std::size_t>(i)]), coeff[static_cast<std::size_t>(j)]);
            symbols[idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = static_cast<Symbol>(acc);
        }
    }
    std::string id = "RS(" + std::to_string(n) + "," + std::to_string(k) + ")_" + std::to_string(q);
    return ReedSolomon{field, n, k, Code(n, q, std::move(symbols), id)};
}

Construction rs_coset(const ReedSolomon& base, const ConstructionTarget& target) {
    const int q = base.field.order();
    const int bound = target.r > 0 ? target.r : base.n;
    const int floor_swt = std::min(base.k, base.n);
    const std::uint64_t budget = target.budget ? target.budget : 100'000;

    std::vector<int> best(static_cast<std::size_t>(base.n));
    for (int i = 0; i < base.n; ++i) best[static_cast<std::size_t>(i)] = base.field.exp(static_cast<long long>(i) * base.k);
    int best_swt = coset_swt(base, best, base.n + 1);
    std::string method = "monomial";

    std::mt19937_64 rng(target.seed);
    std::uniform_int_distribution<int> sym(0, q - 1);
    std::vector<int> v(static_cast<std::size_t>(base.n));
    std::uint64_t tried = 0;
    for (; tried < budget && best_swt > floor_swt; ++tried) {
        for (auto& x : v) x = sym(rng);
        const int s = coset_swt(base, v, best_swt);
        if (s < best_swt) {
            best_swt = s;
            best = v;
            method = "random";
        }
    }
    if (best_swt > bound)
        throw Error(ErrorCode::construction_failed,
                    "best coset has symbol weight " + std::to_string(best_swt) + " > " + std::to_string(bound));
    Code code = translate(base, best);
    code.set_id("RSC");
    std::ostringstream extra;
    extra << "base=" << base.code.id() << " method=" << method << " random_translates=" << tried
          << " translate=" << join(best);
    return Construction{code, provenance("rsc", target, code, extra.str())};
}

Construction rs_subcode_expurgate(const ReedSolomon& base, const ConstructionTarget& target) {
    if (base.distance() < target.d_min)
        throw Error(ErrorCode::invalid_argument, "base distance " + std::to_string(base.distance()) +
                                                     " below d_min " + std::to_string(target.d_min));
    const int r = target.r > 0 ? target.r : base.n;
    const int q = base.field.order();
    std::vector<std::pair<int, std::size_t>> keep;
    for (std::size_t w = 0; w < base.code.size(); ++w) {
        const int s = symbol_stats(base.code.word(w), q).swt;
        if (s <= r) keep.emplace_back(s, w);
    }
    if (keep.size() < target.size_target)
        throw Error(ErrorCode::construction_failed, "only " + std::to_string(keep.size()) +
                                                        " words with symbol weight <= " + std::to_string(r));
    std::sort(keep.begin(), keep.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        auto wa = base.code.word(a.second), wb = base.code.word(b.second);
        return std::lexicographical_compare(wa.begin(), wa.end(), wb.begin(), wb.end());
    });
    keep.resize(target.size_target);
    std::vector<Symbol> symbols;
    symbols.reserve(keep.size() * static_cast<std::size_t>(base.n));
    for (auto [s, w] : keep) {
        auto word = base.code.word(w);
        symbols.insert(symbols.end(), word.begin(), word.end());
    }
    Code code(base.n, q, std::move(symbols), "RSS");
    return Construction{code, provenance("rss", target, code, "base=" + base.code.id())};
}

Construction search_partition_code(const ConstructionTarget& target) {
    check_target(target);
    const auto part = normalized_partition(target);
    if (auto k = kirkman_partition_code(target, part)) return *k;
    const std::uint64_t budget = target.budget ? target.budget : 20'000'000;
    Code code = greedy_partition_code(target, part, budget);
    return Construction{code, provenance("partition", target, code, "method=greedy partition=exact")};
}

Construction injection_esw(const ConstructionTarget& target) {
    check_target(target);
    if (target.n > target.q) throw Error(ErrorCode::invalid_argument, "injection codes need n <= q");
    std::vector<Pool> pools;
    for (auto pool : {rs_injective_pool(target.n, target.q, target.d_min), pgl_pool(target.n, target.q),
                      alternating_pool(target.n, target.q)})
        if (pool && pool->guaranteed_d >= target.d_min && pool->words.size() >= target.size_target)
            pools.push_back(std::move(*pool));

    if (pools.empty()) {
        ConstructionTarget t = target;
        std::vector<int> part(static_cast<std::size_t>(target.n), 1);
        t.partition = part;
        Construction c = search_partition_code(t);
        c.provenance += " pool=none";
        return c;
    }
    auto chosen = std::max_element(pools.begin(), pools.end(),
                                   [](const Pool& a, const Pool& b) { return a.words.size() < b.words.size(); });
    std::sort(chosen->words.begin(), chosen->words.end());
    std::vector<Symbol> symbols;
    for (std::size_t w = 0; w < target.size_target; ++w)
        symbols.insert(symbols.end(), chosen->words[w].begin(), chosen->words[w].end());
    Code code(target.n, target.q, std::move(symbols), "ESW");
    return Construction{code, provenance("injection", target, code,
                                         "method=" + chosen->name + " pool_size=" +
                                             std::to_string(chosen->words.size()))};
}

const std::vector<TableRow>& table_rows() {
    static const std::vector<TableRow> rows = {
        {"ESW_25_24_2_17", "ESW", 25, 24, 2, 17, 51, 16},
        {"MSW_25_24_2_17", "MSW", 25, 24, 2, 17, 51, 12},
        {"ESW_11_6_2_10", "ESW", 11, 6, 2, 10, 1000, 5},
        {"MSW_11_6_2_10", "MSW", 11, 6, 2, 10, 1000, 3},
        {"ESW_7_5_1_8", "ESW", 7, 5, 1, 8, 336, 5},
        {"RSC_7_6_2_8", "RSC", 7, 6, 2, 8, 64, 3},
        {"RSS_7_5_2_8", "RSS", 7, 5, 2, 8, 336, 3},
        {"ESW_7_2_1_8", "ESW", 7, 2, 1, 8, 20160, 2},
        {"RSC_7_4_4_8", "RSC", 7, 4, 4, 8, 4096, 1},
        {"RSS_7_3_2_8", "RSS", 7, 3, 2, 8, 20160, 2},
        {"ESW_15_11_1_16", "ESW", 15, 11, 1, 16, 21120, 11},
        {"RSC_15_13_3_16", "RSC", 15, 13, 3, 16, 4096, 5},
        {"RSS_15_12_3_16", "RSS", 15, 12, 3, 16, 21120, 4},
    };
    return rows;
}

const TableRow& table_row(const std::string& id) {
    for (const auto& row : table_rows())
        if (row.id == id) return row;
    throw Error(ErrorCode::invalid_argument, "unknown table row '" + id + "'");
}

Construction build_table_code(const TableRow& row, std::uint64_t seed) {
    ConstructionTarget t;
    t.n = row.n;
    t.q = row.q;
    t.d_min = row.d;
    t.size_target = row.size;
    t.r = row.r;
    t.seed = seed;

    Construction c = [&]() -> Construction {
        if (row.family == "RSC" || row.family == "RSS") {
            auto base = rs_code(GaloisField::standard(row.q), row.n, row.n - row.d + 1);
            return row.family == "RSC" ? rs_coset(base, t) : rs_subcode_expurgate(base, t);
        }
        if (row.family == "ESW" && row.r == 1) return injection_esw(t);
        if (row.family == "ESW") {
            t.partition = equitable_partition(row.n, row.q);
            return search_partition_code(t);
        }
        // r repeated c times, remainder as ones
        std::vector<int> part(static_cast<std::size_t>(row.capability), row.r);
        for (int left = row.n - row.r * row.capability; left > 0; --left) part.push_back(1);
        t.partition = part;
        t.relax_partition = true;
        return search_partition_code(t);
    }();
    c.code.set_id(row.id);
    return c;
}

}  // namespace symeq
