#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include "symeq/error.hpp"
#include "symeq/harness.hpp"

namespace symeq {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > kSaturated / b ? kSaturated : a * b;
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        if (r > kSaturated / num) return kSaturated;
        r = r * num / static_cast<std::uint64_t>(i);
    }
    return r;
}

std::uint64_t power(std::uint64_t base, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r = sat_mul(r, base);
    return r;
}

// All k-subsets of [0, n) in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(static_cast<std::size_t>(k));
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

int top_sum(std::vector<int> counts, int e) {
    std::sort(counts.begin(), counts.end(), std::greater<>());
    int s = 0;
    for (int i = 0; i < e && i < static_cast<int>(counts.size()); ++i) s += counts[static_cast<std::size_t>(i)];
    return s;
}

bool unique_winner(const Code& code, std::size_t index, const DetectorOutput& v) {
    const int own = dist(code.word(index), v);
    const int n = code.length();
    const Symbol* base = code.symbols().data();
    for (std::size_t w = 0; w < code.size(); ++w) {
        if (w == index) continue;
        const Symbol* word = base + w * static_cast<std::size_t>(n);
        int d = 0;
        for (int i = 0; i < n && d <= own; ++i) d += !((v.slots[static_cast<std::size_t>(i)] >> word[i]) & 1U);
        if (d <= own) return false;
    }
    return true;
}

// Narrowband on the e most frequent symbols of w among the positions where
// w and u differ (full duration), then impulses on uncovered differing
// positions, padded onto agreeing positions.
ErrorPlan pair_attack(std::span<const Symbol> u, std::span<const Symbol> w, int q, int e, int impulses) {
    const int n = static_cast<int>(u.size());
    std::vector<int> counts(static_cast<std::size_t>(q), 0);
    for (int i = 0; i < n; ++i)
        if (u[static_cast<std::size_t>(i)] != w[static_cast<std::size_t>(i)]) ++counts[w[static_cast<std::size_t>(i)]];
    std::vector<int> order(static_cast<std::size_t>(q));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return counts[static_cast<std::size_t>(a)] > counts[static_cast<std::size_t>(b)]; });
    ErrorPlan plan;
    std::uint64_t gamma = 0;
    for (int j = 0; j < e && j < q; ++j) {
        plan.narrowband.push_back({order[static_cast<std::size_t>(j)], 0, n});
        gamma |= std::uint64_t{1} << order[static_cast<std::size_t>(j)];
    }
    std::vector<int> agree;
    for (int i = 0; i < n; ++i) {
        const bool differs = u[static_cast<std::size_t>(i)] != w[static_cast<std::size_t>(i)];
        if (differs && !((gamma >> w[static_cast<std::size_t>(i)]) & 1U)) {
            if (static_cast<int>(plan.impulses.size()) < impulses) plan.impulses.push_back(i);
        } else if (!differs) {
            agree.push_back(i);
        }
    }
    for (int i : agree) {
        if (static_cast<int>(plan.impulses.size()) >= impulses) break;
        plan.impulses.push_back(i);
    }
    std::sort(plan.impulses.begin(), plan.impulses.end());
    return plan;
}

}  // namespace

std::uint64_t theorem1_placements(const Code& code, const Theorem1Budget& b) {
    const int n = code.length(), q = code.alphabet();
    std::uint64_t total = code.size();
    total = sat_mul(total, sat_mul(binomial(q, b.e_nb), power(static_cast<std::uint64_t>(2 * n - 1), b.e_nb)));
    total = sat_mul(total, binomial(q, b.e_fade));
    total = sat_mul(total, binomial(n, b.e_imp));
    total = sat_mul(total, binomial(n * (q - 1), b.e_ins));
    total = sat_mul(total, binomial(n, b.e_del));
    return total;
}

Theorem1Verdict theorem1_oracle(const Code& code, const Theorem1Budget& b, std::uint64_t cap) {
    const int n = code.length(), q = code.alphabet();
    if (b.e_nb < 0 || b.e_nb > q || b.e_fade < 0 || b.e_fade > q || b.e_imp < 0 || b.e_imp > n ||
        b.e_del < 0 || b.e_del > n || b.e_ins < 0 || b.e_ins > n * (q - 1))
        throw Error(ErrorCode::out_of_range, "error counts outside their ranges");
    const std::uint64_t size = theorem1_placements(code, b);
    if (size > cap)
        throw Error(ErrorCode::enumeration_cap, "enumeration needs " +
                                                    (size == kSaturated ? std::string("more than 2^64") : std::to_string(size)) +
                                                    " decoder runs, cap is " + std::to_string(cap));

    Theorem1Verdict verdict;
    verdict.d = code.size() >= 2 ? min_distance(code) : n + 1;
    const auto profile = narrowband_profile(code);
    auto E = [&](int e) { return e == 0 ? 0 : profile[static_cast<std::size_t>(e - 1)]; };
    verdict.theorem_sum = b.e_del + b.e_imp + b.e_ins + E(b.e_fade) + E(b.e_nb);
    verdict.predicted = verdict.theorem_sum < verdict.d;

    // Narrowband choices: symbol set plus one start in [1-n, n-1] per symbol.
    struct NbChoice {
        std::vector<std::uint64_t> add;  // per slot
        std::vector<NarrowbandEvent> events;
    };
    std::vector<NbChoice> nb_choices;
    for (const auto& set : subsets(q, b.e_nb)) {
        std::vector<int> starts(set.size(), 1 - n);
        while (true) {
            NbChoice c{std::vector<std::uint64_t>(static_cast<std::size_t>(n), 0), {}};
            for (std::size_t j = 0; j < set.size(); ++j) {
                c.events.push_back({set[j], starts[j], n});
                for (int i = std::max(0, starts[j]); i < std::min(n, starts[j] + n); ++i)
                    c.add[static_cast<std::size_t>(i)] |= std::uint64_t{1} << set[j];
            }
            nb_choices.push_back(std::move(c));
            std::size_t j = 0;
            while (j < starts.size() && starts[j] == n - 1) starts[j++] = 1 - n;
            if (j == starts.size()) break;
            ++starts[j];
        }
    }
    const auto fade_sets = subsets(q, b.e_fade);
    const auto imp_sets = subsets(n, b.e_imp);
    const auto del_sets = subsets(n, b.e_del);
    const std::uint64_t full = q >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << q) - 1;

    DetectorOutput v;
    v.q = q;
    v.slots.resize(static_cast<std::size_t>(n));
    for (std::size_t u = 0; u < code.size() && verdict.all_correct; ++u) {
        auto word = code.word(u);
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int s = 0; s < q; ++s)
                if (s != word[static_cast<std::size_t>(i)]) pairs.emplace_back(i, s);
        const auto ins_sets = subsets(static_cast<int>(pairs.size()), b.e_ins);
        for (const auto& ins : ins_sets) {
            for (const auto& nb : nb_choices) {
                for (const auto& del : del_sets) {
                    for (const auto& fade : fade_sets) {
                        std::uint64_t fade_mask = 0;
                        for (int s : fade) fade_mask |= std::uint64_t{1} << s;
                        for (const auto& imp : imp_sets) {
                            for (int i = 0; i < n; ++i) v.slots[static_cast<std::size_t>(i)] = (std::uint64_t{1} << word[static_cast<std::size_t>(i)]) | nb.add[static_cast<std::size_t>(i)];
                            for (int k : ins) {
                                auto [i, s] = pairs[static_cast<std::size_t>(k)];
                                v.slots[static_cast<std::size_t>(i)] |= std::uint64_t{1} << s;
                            }
                            for (int i : del) v.slots[static_cast<std::size_t>(i)] &= ~(std::uint64_t{1} << word[static_cast<std::size_t>(i)]);
                            for (auto& slot : v.slots) slot &= ~fade_mask;
                            for (int i : imp) v.slots[static_cast<std::size_t>(i)] = full;
                            ++verdict.placements;
                            if (unique_winner(code, u, v)) continue;
                            verdict.all_correct = false;
                            verdict.failing_word = u;
                            ErrorPlan plan;
                            plan.narrowband = nb.events;
                            plan.fading = fade;
                            plan.impulses = imp;
                            for (int k : ins) plan.insertions.push_back(pairs[static_cast<std::size_t>(k)]);
                            plan.deletions = del;
                            verdict.failing_plan = plan;
                            return verdict;
                        }
                    }
                }
            }
        }
    }
    return verdict;
}

Prop1Witness prop1_witness(const Code& better, const Code& worse) {
    if (better.length() != worse.length() || better.alphabet() != worse.alphabet())
        throw Error(ErrorCode::invalid_argument, "codes must share length and alphabet");
    const int n = better.length(), q = better.alphabet();
    const int d = min_distance(better);
    if (min_distance(worse) != d) throw Error(ErrorCode::invalid_argument, "codes must share the minimum distance");
    const auto eb = narrowband_profile(better);
    const auto ew = narrowband_profile(worse);
    const GrowthOrder order = growth_compare(eb, ew);
    if (order.kind != GrowthOrder::Kind::f_less)
        throw Error(ErrorCode::no_witness, order.kind == GrowthOrder::Kind::equal
                                               ? "capability profiles are equal"
                                               : "first code does not precede the second in the growth order");
    Prop1Witness wit;
    wit.e_prime = order.index;
    wit.d = d;
    const int covered = eb[static_cast<std::size_t>(order.index - 1)];
    if (covered >= d) throw Error(ErrorCode::no_witness, "E(e') of the first code already reaches d");
    wit.nb_errors = order.index;
    wit.impulse_errors = d - covered - 1;

    // With only full-duration narrowband and impulses the transmitted word
    // stays at distance 0, so a placement defeats it exactly when some other
    // word has all its differing positions covered.
    auto worst_pair = [&](std::span<const Symbol> u, std::span<const Symbol> w) {
        std::vector<int> counts(static_cast<std::size_t>(q), 0);
        int diff = 0;
        for (int i = 0; i < n; ++i)
            if (u[static_cast<std::size_t>(i)] != w[static_cast<std::size_t>(i)]) {
                ++diff;
                ++counts[w[static_cast<std::size_t>(i)]];
            }
        return std::pair{diff, top_sum(std::move(counts), wit.nb_errors)};
    };

    wit.better_certified = true;
    int tightest = std::numeric_limits<int>::min();
    std::vector<std::pair<std::size_t, std::size_t>> tight_pairs;
    for (std::size_t u = 0; u < better.size(); ++u)
        for (std::size_t w = 0; w < better.size(); ++w) {
            if (u == w) continue;
            ++wit.pairs_checked;
            auto [diff, cov] = worst_pair(better.word(u), better.word(w));
            const int slack = cov + wit.impulse_errors - diff;
            if (slack >= 0) wit.better_certified = false;
            if (slack > tightest) {
                tightest = slack;
                tight_pairs.clear();
            }
            if (slack == tightest && tight_pairs.size() < 1000) tight_pairs.emplace_back(u, w);
        }
    // Decode the tightest attacks as a cross-check of the counting argument.
    for (auto [u, w] : tight_pairs) {
        auto plan = pair_attack(better.word(u), better.word(w), q, wit.nb_errors, wit.impulse_errors);
        const bool ok = unique_winner(better, u, apply_plan(better.word(u), q, plan));
        if (!ok) wit.better_certified = false;
    }

    for (std::size_t u = 0; u < worse.size(); ++u)
        for (std::size_t w = 0; w < worse.size(); ++w) {
            if (u == w) continue;
            auto [diff, cov] = worst_pair(worse.word(u), worse.word(w));
            if (cov + wit.impulse_errors < diff) continue;
            auto plan = pair_attack(worse.word(u), worse.word(w), q, wit.nb_errors, wit.impulse_errors);
            auto v = apply_plan(worse.word(u), q, plan);
            auto dec = min_dist_decode(worse, v);
            if (!dec.tie && dec.chosen == u) continue;
            wit.transmitted = u;
            wit.competitor = w;
            wit.failing_plan = std::move(plan);
            wit.failing_decode = std::move(dec);
            return wit;
        }
    throw Error(ErrorCode::no_witness, "adversarial search found no failing placement for the second code");
}

Lemma2Report verify_lemma2(const Code& code, std::span<const int> durations) {
    if (durations.empty()) throw Error(ErrorCode::invalid_argument, "duration set is empty");
    Lemma2Report r;
    r.durations.assign(durations.begin(), durations.end());
    r.reference_duration = std::min(code.length(), *std::max_element(durations.begin(), durations.end()));
    r.windowed = windowed_profile(code, durations);
    const int ref[] = {r.reference_duration};
    r.reference = windowed_profile(code, ref);
    r.equal = r.windowed == r.reference;
    return r;
}

}  // namespace symeq
