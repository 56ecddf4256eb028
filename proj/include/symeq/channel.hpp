#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "symeq/detector.hpp"
#include "symeq/rng.hpp"

namespace symeq {

/// Positions and starts are 0-based. A narrowband event on `symbol` with
/// start s and duration l touches slots [s, s+l-1] clipped to [0, n-1].
struct NarrowbandEvent {
    int symbol = 0;
    int start = 0;
    int duration = 1;
    bool operator==(const NarrowbandEvent&) const = default;
};

struct ErrorPlan {
    std::vector<NarrowbandEvent> narrowband;
    std::vector<int> fading;                        // symbols
    std::vector<int> impulses;                      // positions
    std::vector<std::pair<int, int>> insertions;    // (position, symbol)
    std::vector<int> deletions;                     // positions

    bool empty() const noexcept {
        return narrowband.empty() && fading.empty() && impulses.empty() && insertions.empty() &&
               deletions.empty();
    }
    bool operator==(const ErrorPlan&) const = default;
};

enum class StartPolicy {
    overlapping,  // start uniform over [1-l, n-1]: every window meeting the word
    aligned,      // start fixed at 0
};

struct ChannelConfig {
    double p = 0.0;
    double Q = 0.0;
    std::vector<int> durations;  // empty selects {b*n : b = 1..10}
    StartPolicy start_policy = StartPolicy::overlapping;
};

std::vector<int> default_durations(int n);

void apply_narrowband(DetectorOutput& v, int symbol, int start, int duration);
void apply_fading(DetectorOutput& v, const std::vector<int>& symbols);
void apply_impulse(DetectorOutput& v, const std::vector<int>& positions);
void apply_background(DetectorOutput& v, std::span<const Symbol> u,
                      const std::vector<std::pair<int, int>>& insertions,
                      const std::vector<int>& deletions);

/// Builds the detector output for transmitted word u: singleton slots, then
/// insertions, narrowband, deletions, fading and impulses in that order.
DetectorOutput apply_plan(std::span<const Symbol> u, int q, const ErrorPlan& plan);

ErrorPlan sample_plan(std::span<const Symbol> u, int q, const ChannelConfig& cfg, Rng& rng);

struct Transmission {
    DetectorOutput output;
    ErrorPlan plan;
};

Transmission transmit(std::span<const Symbol> u, int q, const ChannelConfig& cfg, Rng& rng);

/// One event per line: "nb <symbol> <start> <duration>", "fade <symbol>",
/// "impulse <pos>", "insert <pos> <symbol>", "delete <pos>".
std::string format_plan(const ErrorPlan& plan);
ErrorPlan parse_plan(const std::string& text);

}  // namespace symeq
