#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symeq/code.hpp"

namespace symeq {

/// Hard-decision detector output: one symbol set per time slot, stored as a
/// bit mask (bit s set when symbol s was detected).
struct DetectorOutput {
    int q = 0;
    std::vector<std::uint64_t> slots;

    int length() const noexcept { return static_cast<int>(slots.size()); }
    bool contains(int i, int symbol) const {
        return (slots.at(static_cast<std::size_t>(i)) >> symbol) & 1U;
    }
    std::uint64_t full_mask() const noexcept {
        return q >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << q) - 1;
    }

    static DetectorOutput singletons(std::span<const Symbol> word, int q);

    bool operator==(const DetectorOutput&) const = default;
};

/// "({0},{0,1},{},{3})" style rendering.
std::string format_detector(const DetectorOutput& v);

}  // namespace symeq
