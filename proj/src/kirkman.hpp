#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "symeq/code.hpp"

namespace symeq::detail {

// Resolvable Steiner triple system on 2v+1 points built from GF(v),
// v = 6t+1 a prime power. Each parallel class becomes one coordinate and
// the block index inside the class is the symbol, so any two points give
// words agreeing in exactly one coordinate.
struct KirkmanSystem {
    int v = 0;                                   // number of classes
    int points = 0;                              // 2v+1
    int blocks = 0;                              // (2v+1)/3 per class
    std::vector<std::array<int, 3>> block;       // [cls * blocks + b]
    std::vector<int> block_of;                   // [cls * points + x]
};

std::optional<KirkmanSystem> kirkman_system(int v);

struct LabelGoal {
    std::vector<int> partition;  // descending, length = blocks
    bool hard_cap = false;       // never let a count exceed partition[0]
    double t_start = 1.0;
    double t_floor = 0.15;
};

struct LabelResult {
    std::vector<int> labels;  // [cls * blocks + b] -> symbol
    long cost = 0;            // 0 when every word meets the partition
};

LabelResult anneal_labels(const KirkmanSystem& ks, const LabelGoal& goal,
                          const std::vector<int>& start, std::uint64_t seed,
                          std::uint64_t iterations);

Code kirkman_code(const KirkmanSystem& ks, const std::vector<int>& labels, std::size_t size);

}  // namespace symeq::detail
