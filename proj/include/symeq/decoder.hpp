#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "symeq/code.hpp"
#include "symeq/detector.hpp"

namespace symeq {

/// Number of slots i with u_i missing from v_i.
int dist(std::span<const Symbol> u, const DetectorOutput& v);

struct DecodeResult {
    std::vector<std::size_t> winners;  // all indices at the minimal distance
    std::size_t chosen = 0;            // lexicographically smallest winning word
    int distance = 0;
    bool tie = false;
};

DecodeResult min_dist_decode(const Code& code, const DetectorOutput& v);

/// Strips every symbol seen in more than floor((n+r)/2) slots.
DetectorOutput narrowband_detect(DetectorOutput v, int r);

}  // namespace symeq
