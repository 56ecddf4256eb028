#include "symeq/decoder.hpp"

#include <algorithm>
#include <bit>

#include "symeq/error.hpp"

namespace symeq {

int dist(std::span<const Symbol> u, const DetectorOutput& v) {
    if (static_cast<int>(u.size()) != v.length()) throw Error(ErrorCode::invalid_argument, "length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < u.size(); ++i) d += !((v.slots[i] >> u[i]) & 1U);
    return d;
}

DecodeResult min_dist_decode(const Code& code, const DetectorOutput& v) {
    const int n = code.length();
    if (v.length() != n) throw Error(ErrorCode::invalid_argument, "detector output length differs from code length");
    const Symbol* base = code.symbols().data();
    const std::uint64_t* slots = v.slots.data();

    DecodeResult result;
    result.distance = n + 1;
    for (std::size_t w = 0; w < code.size(); ++w) {
        const Symbol* word = base + w * static_cast<std::size_t>(n);
        int d = 0;
        for (int i = 0; i < n && d <= result.distance; ++i) d += !((slots[i] >> word[i]) & 1U);
        if (d < result.distance) {
            result.distance = d;
            result.winners.clear();
        }
        if (d == result.distance) result.winners.push_back(w);
    }
    result.tie = result.winners.size() > 1;
    result.chosen = result.winners.front();
    for (std::size_t w : result.winners) {
        const Symbol* a = base + w * static_cast<std::size_t>(n);
        const Symbol* b = base + result.chosen * static_cast<std::size_t>(n);
        if (std::lexicographical_compare(a, a + n, b, b + n)) result.chosen = w;
    }
    return result;
}

DetectorOutput narrowband_detect(DetectorOutput v, int r) {
    if (r < 1) throw Error(ErrorCode::invalid_argument, "symbol weight bound must be positive");
    const int tau = (v.length() + r) / 2;
    std::uint64_t strip = 0;
    for (int s = 0; s < v.q; ++s) {
        int seen = 0;
        for (auto slot : v.slots) seen += (slot >> s) & 1U;
        if (seen > tau) strip |= std::uint64_t{1} << s;
    }
    for (auto& slot : v.slots) slot &= ~strip;
    return v;
}

}  // namespace symeq
