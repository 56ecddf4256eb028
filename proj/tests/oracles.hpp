#pragma once

// Independent brute-force references. Nothing here calls into the library's
// metric code; only the Code container is shared.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "symeq/code.hpp"

namespace oracle {

using symeq::Code;
using symeq::Symbol;

/// max over words and over all symbol subsets of size e of the number of
/// coordinates carrying a symbol of the subset.
inline int subset_E(const Code& code, int e) {
    const int q = code.alphabet();
    int best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q); ++mask) {
        if (std::popcount(mask) != e) continue;
        for (std::size_t w = 0; w < code.size(); ++w) {
            int hit = 0;
            for (Symbol s : code.word(w)) hit += (mask >> s) & 1U;
            best = std::max(best, hit);
        }
    }
    return best;
}

/// Sum of the e largest entries of a count vector, by repeated extraction.
inline int top_sum(std::vector<int> counts, int e) {
    int total = 0;
    for (int k = 0; k < e; ++k) {
        auto it = std::max_element(counts.begin(), counts.end());
        total += *it;
        *it = -1;
    }
    return total;
}

/// min over all words u in [0,q)^n of the sum of the e largest symbol counts.
/// Small spaces are walked word by word; larger ones through every ordered
/// composition of n into q parts, which is the set of count vectors.
inline std::vector<int> brute_fstar(int n, int q) {
    std::vector<int> best(static_cast<std::size_t>(q), n + 1);
    double space = std::pow(static_cast<double>(q), n);
    if (space <= 2e6) {
        std::vector<int> word(static_cast<std::size_t>(n), 0);
        while (true) {
            std::vector<int> counts(static_cast<std::size_t>(q), 0);
            for (int s : word) ++counts[static_cast<std::size_t>(s)];
            for (int e = 1; e <= q; ++e)
                best[static_cast<std::size_t>(e - 1)] = std::min(best[static_cast<std::size_t>(e - 1)], top_sum(counts, e));
            int i = 0;
            while (i < n && ++word[static_cast<std::size_t>(i)] == q) word[static_cast<std::size_t>(i++)] = 0;
            if (i == n) break;
        }
        return best;
    }
    std::vector<int> counts(static_cast<std::size_t>(q), 0);
    std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == q - 1) {
            counts[static_cast<std::size_t>(idx)] = left;
            for (int e = 1; e <= q; ++e)
                best[static_cast<std::size_t>(e - 1)] = std::min(best[static_cast<std::size_t>(e - 1)], top_sum(counts, e));
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[static_cast<std::size_t>(idx)] = c;
            rec(idx + 1, left - c);
        }
    };
    rec(0, n);
    return best;
}

/// E(e;L,C) by enumerating symbol subsets, durations and every window start
/// (1-based starts i <= n, so the window [i, i+l-1] meets or precedes the word).
inline int windowed_E(const Code& code, int e, const std::vector<int>& durations) {
    const int n = code.length();
    const int q = code.alphabet();
    int best = 0;
    for (std::size_t w = 0; w < code.size(); ++w) {
        auto word = code.word(w);
        for (int l : durations) {
            std::vector<int> cover(static_cast<std::size_t>(q), 0);
            for (int s = 0; s < q; ++s)
                for (int start = 2 - l; start <= n; ++start) {
                    int c = 0;
                    for (int pos = start; pos < start + l; ++pos)
                        if (pos >= 1 && pos <= n && word[static_cast<std::size_t>(pos - 1)] == s) ++c;
                    cover[static_cast<std::size_t>(s)] = std::max(cover[static_cast<std::size_t>(s)], c);
                }
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q); ++mask) {
                if (std::popcount(mask) != e) continue;
                int hit = 0;
                for (int s = 0; s < q; ++s)
                    if ((mask >> s) & 1U) hit += cover[static_cast<std::size_t>(s)];
                best = std::max(best, hit);
            }
        }
    }
    return best;
}

inline int pairwise_min_distance(const Code& code) {
    int best = code.length() + 1;
    for (std::size_t a = 0; a < code.size(); ++a)
        for (std::size_t b = a + 1; b < code.size(); ++b) {
            int d = 0;
            for (int i = 0; i < code.length(); ++i)
                d += code.word(a)[static_cast<std::size_t>(i)] != code.word(b)[static_cast<std::size_t>(i)];
            best = std::min(best, d);
        }
    return best;
}

inline double katayama_variance(double x) {
    return 0.23 + 1.38 * std::pow(std::abs(std::sin(x - 0.10)), 1.91) +
           7.17 * std::pow(std::abs(std::sin(x - 0.61)), 157000.0);
}

/// Mean of the variance over one half period by composite Simpson in the
/// phase variable x in [0, pi].
inline double simpson_mean_variance(int intervals = 4'000'000) {
    const double h = std::numbers::pi / intervals;
    double sum = katayama_variance(0.0) + katayama_variance(std::numbers::pi);
    for (int k = 1; k < intervals; ++k) sum += (k % 2 ? 4.0 : 2.0) * katayama_variance(k * h);
    return sum * h / 3.0 / std::numbers::pi;
}

/// Detector output as explicit symbol sets.
using SetOutput = std::vector<std::set<int>>;

inline int set_distance(std::span<const Symbol> u, const SetOutput& v) {
    int d = 0;
    for (std::size_t i = 0; i < u.size(); ++i) d += !v[i].count(u[i]);
    return d;
}

/// True when the transmitted word is the unique minimizer of set_distance.
inline bool unique_decode(const Code& code, std::size_t sent, const SetOutput& v) {
    const int ds = set_distance(code.word(sent), v);
    for (std::size_t w = 0; w < code.size(); ++w)
        if (w != sent && set_distance(code.word(w), v) <= ds) return false;
    return true;
}

inline void for_each_subset(int universe, int size, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int from) {
        if (static_cast<int>(pick.size()) == size) {
            fn(pick);
            return;
        }
        for (int x = from; x < universe; ++x) {
            pick.push_back(x);
            rec(x + 1);
            pick.pop_back();
        }
    };
    rec(0);
}

/// Exhaustive decoding check over narrowband symbol sets (full-length tones),
/// fading sets and impulse position sets of the exact sizes given.
inline bool exhaustive_nb_fade_impulse(const Code& code, int e_nb, int e_fade, int e_imp) {
    const int n = code.length();
    const int q = code.alphabet();
    bool ok = true;
    for (std::size_t sent = 0; sent < code.size() && ok; ++sent) {
        auto u = code.word(sent);
        for_each_subset(q, e_nb, [&](const std::vector<int>& nb) {
            for_each_subset(q, e_fade, [&](const std::vector<int>& fade) {
                for_each_subset(n, e_imp, [&](const std::vector<int>& imp) {
                    if (!ok) return;
                    SetOutput v(static_cast<std::size_t>(n));
                    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)].insert(u[static_cast<std::size_t>(i)]);
                    for (int s : nb)
                        for (auto& slot : v) slot.insert(s);
                    for (int s : fade)
                        for (auto& slot : v) slot.erase(s);
                    for (int i : imp)
                        for (int s = 0; s < q; ++s) v[static_cast<std::size_t>(i)].insert(s);
                    ok = unique_decode(code, sent, v);
                });
            });
        });
    }
    return ok;
}

inline Code random_code(std::mt19937_64& rng, int n, int q, int max_words) {
    std::uniform_int_distribution<int> sym(0, q - 1);
    std::uniform_int_distribution<int> count(1, max_words);
    const int m = count(rng);
    std::set<std::vector<int>> words;
    for (int tries = 0; tries < 50 * m && static_cast<int>(words.size()) < m; ++tries) {
        std::vector<int> w(static_cast<std::size_t>(n));
        for (int& s : w) s = sym(rng);
        words.insert(w);
    }
    return Code::from_words(n, q, {words.begin(), words.end()});
}

inline std::vector<int> random_word(std::mt19937_64& rng, int n, int q) {
    std::uniform_int_distribution<int> sym(0, q - 1);
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int& s : w) s = sym(rng);
    return w;
}

/// Random word with every symbol count in {floor(n/q), ceil(n/q)}.
inline std::vector<int> random_equitable_word(std::mt19937_64& rng, int n, int q) {
    const int lo = n / q;
    std::vector<int> syms(static_cast<std::size_t>(q));
    for (int s = 0; s < q; ++s) syms[static_cast<std::size_t>(s)] = s;
    std::shuffle(syms.begin(), syms.end(), rng);
    std::vector<int> word;
    for (int s = 0; s < q; ++s)
        for (int k = 0; k < lo + (s < n - lo * q ? 1 : 0); ++k) word.push_back(syms[static_cast<std::size_t>(s)]);
    std::shuffle(word.begin(), word.end(), rng);
    return word;
}

}  // namespace oracle
