#include "kirkman.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "symeq/galois.hpp"

namespace symeq::detail {

namespace {

bool is_prime_power(int v) {
    if (v < 2) return false;
    int p = 2;
    while (v % p) ++p;
    while (v % p == 0) v /= p;
    return v == 1;
}

struct BaseSearch {
    const GaloisField& f;
    int t;
    std::vector<std::pair<int, int>> chosen;

    // Level-1 exponents (ex, ey) for the t mixed base triples. Constraints:
    // level-1 points fall into distinct cosets of <w^2t>, pure differences
    // into distinct cosets of <w^t>, mixed differences into distinct cosets
    // of <w^2t>.
    bool run(int i, std::vector<bool>& pts, std::vector<bool>& diff, std::vector<bool>& mixed) {
        if (i == t) return true;
        const int period = 6 * t;
        const int z = f.exp(i + t);
        for (int ex = 0; ex < period; ++ex) {
            if (pts[static_cast<std::size_t>(ex % (2 * t))]) continue;
            for (int ey = ex + 1; ey < period; ++ey) {
                if (ey % (2 * t) == ex % (2 * t) || pts[static_cast<std::size_t>(ey % (2 * t))]) continue;
                const int x = f.exp(ex), y = f.exp(ey);
                const int c = f.log(f.sub(x, y)) % t;
                if (diff[static_cast<std::size_t>(c)]) continue;
                const int m1 = f.sub(x, z), m2 = f.sub(y, z);
                if (m1 == 0 || m2 == 0) continue;
                const int k1 = f.log(m1) % (2 * t), k2 = f.log(m2) % (2 * t);
                if (k1 == k2 || mixed[static_cast<std::size_t>(k1)] || mixed[static_cast<std::size_t>(k2)]) continue;
                pts[static_cast<std::size_t>(ex % (2 * t))] = pts[static_cast<std::size_t>(ey % (2 * t))] = true;
                diff[static_cast<std::size_t>(c)] = true;
                mixed[static_cast<std::size_t>(k1)] = mixed[static_cast<std::size_t>(k2)] = true;
                chosen.emplace_back(ex, ey);
                if (run(i + 1, pts, diff, mixed)) return true;
                chosen.pop_back();
                pts[static_cast<std::size_t>(ex % (2 * t))] = pts[static_cast<std::size_t>(ey % (2 * t))] = false;
                diff[static_cast<std::size_t>(c)] = false;
                mixed[static_cast<std::size_t>(k1)] = mixed[static_cast<std::size_t>(k2)] = false;
            }
        }
        return false;
    }
};

}  // namespace

std::optional<KirkmanSystem> kirkman_system(int v) {
    if (v % 6 != 1 || !is_prime_power(v) || v > 4096) return std::nullopt;
    const GaloisField f = GaloisField::standard(v);
    const int t = v / 6;

    BaseSearch search{f, t, {}};
    std::vector<bool> pts(static_cast<std::size_t>(2 * t)), diff(static_cast<std::size_t>(t)),
        mixed(static_cast<std::size_t>(2 * t));
    if (!search.run(0, pts, diff, mixed)) return std::nullopt;

    // Point (x, level) has index x + v * level; infinity is 2v.
    const int inf = 2 * v;
    std::vector<std::array<std::pair<int, int>, 3>> base;
    base.push_back({{{-1, 0}, {0, 0}, {0, 1}}});
    for (int i = 0; i < t; ++i)
        base.push_back({{{f.exp(i), 0}, {f.exp(i + 2 * t), 0}, {f.exp(i + 4 * t), 0}}});
    for (int i = 0; i < t; ++i) {
        auto [ex, ey] = search.chosen[static_cast<std::size_t>(i)];
        for (int j = 0; j < 3; ++j) {
            const int m = f.exp(2 * t * j);
            base.push_back({{{f.mul(f.exp(i + t), m), 0}, {f.mul(f.exp(ex), m), 1}, {f.mul(f.exp(ey), m), 1}}});
        }
    }

    KirkmanSystem ks;
    ks.v = v;
    ks.points = 2 * v + 1;
    ks.blocks = static_cast<int>(base.size());
    ks.block.resize(static_cast<std::size_t>(v * ks.blocks));
    ks.block_of.assign(static_cast<std::size_t>(v * ks.points), -1);
    for (int g = 0; g < v; ++g) {
        for (int b = 0; b < ks.blocks; ++b) {
            auto& blk = ks.block[static_cast<std::size_t>(g * ks.blocks + b)];
            for (int k = 0; k < 3; ++k) {
                auto [x, level] = base[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)];
                const int pt = x < 0 ? inf : f.add(x, g) + v * level;
                blk[static_cast<std::size_t>(k)] = pt;
                auto& slot = ks.block_of[static_cast<std::size_t>(g * ks.points + pt)];
                if (slot != -1) return std::nullopt;
                slot = b;
            }
        }
    }
    std::vector<int> pair_seen(static_cast<std::size_t>(ks.points * ks.points), 0);
    for (const auto& blk : ks.block)
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                const auto x = static_cast<std::size_t>(blk[static_cast<std::size_t>(a)]);
                const auto y = static_cast<std::size_t>(blk[static_cast<std::size_t>(b)]);
                if (++pair_seen[x * static_cast<std::size_t>(ks.points) + y] > 1) return std::nullopt;
                ++pair_seen[y * static_cast<std::size_t>(ks.points) + x];
            }
    return ks;
}

LabelResult anneal_labels(const KirkmanSystem& ks, const LabelGoal& goal,
                          const std::vector<int>& start, std::uint64_t seed,
                          std::uint64_t iterations) {
    const int nb = ks.blocks;
    const int np = ks.points;
    const int cap = goal.partition.front();
    std::vector<int> target_hist(static_cast<std::size_t>(cap + 1), 0);
    for (int c : goal.partition) ++target_hist[static_cast<std::size_t>(c)];

    std::vector<int> lab = start;
    std::vector<int> cnt(static_cast<std::size_t>(np * nb), 0);
    for (int g = 0; g < ks.v; ++g)
        for (int x = 0; x < np; ++x)
            ++cnt[static_cast<std::size_t>(x * nb + lab[static_cast<std::size_t>(g * nb + ks.block_of[static_cast<std::size_t>(g * np + x)])])];

    std::vector<int> hist(static_cast<std::size_t>(cap + 1));
    auto penalty = [&](int x) {
        std::fill(hist.begin(), hist.end(), 0);
        long excess = 0;
        for (int s = 0; s < nb; ++s) {
            const int c = cnt[static_cast<std::size_t>(x * nb + s)];
            if (c > cap) {
                excess += c - cap;
                ++hist[static_cast<std::size_t>(cap)];
            } else {
                ++hist[static_cast<std::size_t>(c)];
            }
        }
        long pen = 3 * excess;
        for (int k = 0; k <= cap; ++k) pen += std::abs(hist[static_cast<std::size_t>(k)] - target_hist[static_cast<std::size_t>(k)]);
        return pen;
    };
    auto over_cap = [&](int x) {
        for (int s = 0; s < nb; ++s)
            if (cnt[static_cast<std::size_t>(x * nb + s)] > cap) return true;
        return false;
    };

    long cost = 0;
    for (int x = 0; x < np; ++x) cost += penalty(x);
    LabelResult best{lab, cost};

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_cls(0, ks.v - 1), pick_blk(0, nb - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double temp = goal.t_start;
    for (std::uint64_t it = 0; it < iterations && best.cost > 0; ++it) {
        const int g = pick_cls(rng), b1 = pick_blk(rng), b2 = pick_blk(rng);
        if (b1 == b2) continue;
        int& l1 = lab[static_cast<std::size_t>(g * nb + b1)];
        int& l2 = lab[static_cast<std::size_t>(g * nb + b2)];
        const auto& p1 = ks.block[static_cast<std::size_t>(g * nb + b1)];
        const auto& p2 = ks.block[static_cast<std::size_t>(g * nb + b2)];
        long before = 0;
        for (int k = 0; k < 3; ++k) before += penalty(p1[static_cast<std::size_t>(k)]) + penalty(p2[static_cast<std::size_t>(k)]);
        auto shift = [&](int sign) {
            for (int k = 0; k < 3; ++k) {
                cnt[static_cast<std::size_t>(p1[static_cast<std::size_t>(k)] * nb + l1)] -= sign;
                cnt[static_cast<std::size_t>(p1[static_cast<std::size_t>(k)] * nb + l2)] += sign;
                cnt[static_cast<std::size_t>(p2[static_cast<std::size_t>(k)] * nb + l2)] -= sign;
                cnt[static_cast<std::size_t>(p2[static_cast<std::size_t>(k)] * nb + l1)] += sign;
            }
        };
        shift(1);
        long after = 0;
        bool blocked = false;
        for (int k = 0; k < 3; ++k) {
            after += penalty(p1[static_cast<std::size_t>(k)]) + penalty(p2[static_cast<std::size_t>(k)]);
            if (goal.hard_cap) blocked = blocked || over_cap(p1[static_cast<std::size_t>(k)]) || over_cap(p2[static_cast<std::size_t>(k)]);
        }
        const long delta = after - before;
        if (!blocked && (delta <= 0 || unit(rng) < std::exp(-static_cast<double>(delta) / temp))) {
            std::swap(l1, l2);
            cost += delta;
            if (cost < best.cost) best = {lab, cost};
        } else {
            shift(-1);
        }
        temp = std::max(goal.t_floor, temp * 0.9999995);
    }
    return best;
}

Code kirkman_code(const KirkmanSystem& ks, const std::vector<int>& labels, std::size_t size) {
    const std::size_t m = std::min(size, static_cast<std::size_t>(ks.points));
    std::vector<Symbol> symbols;
    symbols.reserve(m * static_cast<std::size_t>(ks.v));
    for (std::size_t x = 0; x < m; ++x)
        for (int g = 0; g < ks.v; ++g)
            symbols.push_back(static_cast<Symbol>(
                labels[static_cast<std::size_t>(g * ks.blocks + ks.block_of[static_cast<std::size_t>(g * ks.points) + x])]));
    return Code(ks.v, ks.blocks, std::move(symbols));
}

}  // namespace symeq::detail
