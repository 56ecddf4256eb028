#include "symeq/channel.hpp"

#include <algorithm>
#include <sstream>

#include "symeq/error.hpp"

namespace symeq {

DetectorOutput DetectorOutput::singletons(std::span<const Symbol> word, int q) {
    if (q < 1 || q > kMaxAlphabet) throw Error(ErrorCode::invalid_argument, "bad alphabet size");
    DetectorOutput v;
    v.q = q;
    v.slots.reserve(word.size());
    for (Symbol s : word) {
        if (s >= q) throw Error(ErrorCode::invalid_codeword, "symbol outside alphabet");
        v.slots.push_back(std::uint64_t{1} << s);
    }
    return v;
}

std::string format_detector(const DetectorOutput& v) {
    std::string out = "(";
    for (int i = 0; i < v.length(); ++i) {
        if (i) out += ',';
        out += '{';
        bool first = true;
        for (int s = 0; s < v.q; ++s) {
            if (!v.contains(i, s)) continue;
            if (!first) out += ',';
            out += std::to_string(s);
            first = false;
        }
        out += '}';
    }
    return out + ")";
}

std::vector<int> default_durations(int n) {
    std::vector<int> out;
    for (int b = 1; b <= 10; ++b) out.push_back(b * n);
    return out;
}

namespace {

void check_symbol(const DetectorOutput& v, int symbol) {
    if (symbol < 0 || symbol >= v.q) throw Error(ErrorCode::out_of_range, "symbol outside alphabet");
}

void check_position(const DetectorOutput& v, int i) {
    if (i < 0 || i >= v.length()) throw Error(ErrorCode::out_of_range, "position outside [0,n)");
}

}  // namespace

void apply_narrowband(DetectorOutput& v, int symbol, int start, int duration) {
    check_symbol(v, symbol);
    if (duration < 1) throw Error(ErrorCode::invalid_argument, "duration must be positive");
    if (start >= v.length()) throw Error(ErrorCode::out_of_range, "narrowband start after the last slot");
    const long long lo = std::max<long long>(start, 0);
    const long long hi = std::min<long long>(static_cast<long long>(start) + duration, v.length());
    for (long long i = lo; i < hi; ++i) v.slots[static_cast<std::size_t>(i)] |= std::uint64_t{1} << symbol;
}

void apply_fading(DetectorOutput& v, const std::vector<int>& symbols) {
    std::uint64_t mask = 0;
    for (int s : symbols) {
        check_symbol(v, s);
        mask |= std::uint64_t{1} << s;
    }
    for (auto& slot : v.slots) slot &= ~mask;
}

void apply_impulse(DetectorOutput& v, const std::vector<int>& positions) {
    for (int i : positions) {
        check_position(v, i);
        v.slots[static_cast<std::size_t>(i)] = v.full_mask();
    }
}

void apply_background(DetectorOutput& v, std::span<const Symbol> u,
                      const std::vector<std::pair<int, int>>& insertions,
                      const std::vector<int>& deletions) {
    if (static_cast<int>(u.size()) != v.length()) throw Error(ErrorCode::invalid_argument, "length mismatch");
    for (auto [i, s] : insertions) {
        check_position(v, i);
        check_symbol(v, s);
        if (u[static_cast<std::size_t>(i)] == s)
            throw Error(ErrorCode::invalid_plan, "insertion of the transmitted symbol at position " +
                                                      std::to_string(i));
        v.slots[static_cast<std::size_t>(i)] |= std::uint64_t{1} << s;
    }
    for (int i : deletions) {
        check_position(v, i);
        v.slots[static_cast<std::size_t>(i)] &= ~(std::uint64_t{1} << u[static_cast<std::size_t>(i)]);
    }
}

DetectorOutput apply_plan(std::span<const Symbol> u, int q, const ErrorPlan& plan) {
    DetectorOutput v = DetectorOutput::singletons(u, q);
    apply_background(v, u, plan.insertions, {});
    for (const auto& ev : plan.narrowband) apply_narrowband(v, ev.symbol, ev.start, ev.duration);
    apply_background(v, u, {}, plan.deletions);
    apply_fading(v, plan.fading);
    apply_impulse(v, plan.impulses);
    return v;
}

ErrorPlan sample_plan(std::span<const Symbol> u, int q, const ChannelConfig& cfg, Rng& rng) {
    if (cfg.p < 0 || cfg.p > 1 || cfg.Q < 0 || cfg.Q > 1)
        throw Error(ErrorCode::invalid_argument, "probabilities must lie in [0,1]");
    const int n = static_cast<int>(u.size());
    const std::vector<int> durations = cfg.durations.empty() ? default_durations(n) : cfg.durations;
    for (int l : durations)
        if (l < 1) throw Error(ErrorCode::invalid_argument, "durations must be positive");

    std::bernoulli_distribution nb(cfg.p);
    std::bernoulli_distribution ev(cfg.Q);
    std::uniform_int_distribution<std::size_t> pick_duration(0, durations.size() - 1);

    ErrorPlan plan;
    for (int s = 0; s < q; ++s) {
        if (!nb(rng)) continue;
        const int l = durations[pick_duration(rng)];
        int start = 0;
        if (cfg.start_policy == StartPolicy::overlapping)
            start = std::uniform_int_distribution<int>(1 - l, n - 1)(rng);
        plan.narrowband.push_back({s, start, l});
    }
    for (int s = 0; s < q; ++s)
        if (ev(rng)) plan.fading.push_back(s);
    for (int i = 0; i < n; ++i)
        if (ev(rng)) plan.impulses.push_back(i);
    // One draw per (position, symbol) pair; pairs hitting u_i are dropped.
    for (int i = 0; i < n; ++i)
        for (int s = 0; s < q; ++s)
            if (ev(rng) && s != u[static_cast<std::size_t>(i)]) plan.insertions.emplace_back(i, s);
    for (int i = 0; i < n; ++i)
        if (ev(rng)) plan.deletions.push_back(i);
    return plan;
}

Transmission transmit(std::span<const Symbol> u, int q, const ChannelConfig& cfg, Rng& rng) {
    Transmission t;
    t.plan = sample_plan(u, q, cfg, rng);
    t.output = apply_plan(u, q, t.plan);
    return t;
}

std::string format_plan(const ErrorPlan& plan) {
    std::ostringstream out;
    for (const auto& e : plan.narrowband) out << "nb " << e.symbol << ' ' << e.start << ' ' << e.duration << '\n';
    for (int s : plan.fading) out << "fade " << s << '\n';
    for (int i : plan.impulses) out << "impulse " << i << '\n';
    for (auto [i, s] : plan.insertions) out << "insert " << i << ' ' << s << '\n';
    for (int i : plan.deletions) out << "delete " << i << '\n';
    return out.str();
}

ErrorPlan parse_plan(const std::string& text) {
    ErrorPlan plan;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind) || kind[0] == '#') continue;
        auto bad = [&] { return Error(ErrorCode::parse, "plan line " + std::to_string(lineno) + ": '" + line + "'"); };
        int a = 0, b = 0, c = 0;
        if (kind == "nb") {
            if (!(ls >> a >> b >> c)) throw bad();
            plan.narrowband.push_back({a, b, c});
        } else if (kind == "fade") {
            if (!(ls >> a)) throw bad();
            plan.fading.push_back(a);
        } else if (kind == "impulse") {
            if (!(ls >> a)) throw bad();
            plan.impulses.push_back(a);
        } else if (kind == "insert") {
            if (!(ls >> a >> b)) throw bad();
            plan.insertions.emplace_back(a, b);
        } else if (kind == "delete") {
            if (!(ls >> a)) throw bad();
            plan.deletions.push_back(a);
        } else {
            throw bad();
        }
        std::string extra;
        if (ls >> extra) throw bad();
    }
    return plan;
}

}  // namespace symeq
