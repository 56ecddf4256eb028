#include "symeq/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "symeq/error.hpp"
#include "symeq/rng.hpp"

namespace symeq {

namespace {

struct Tally {
    std::size_t errors = 0;
    std::size_t ties = 0;
};

struct CodeFacts {
    int d = 0;
    int swt = 0;
};

CodeFacts facts(const Code& code) {
    CodeFacts f;
    f.d = code.size() >= 2 ? min_distance(code) : 0;
    for (std::size_t w = 0; w < code.size(); ++w)
        f.swt = std::max(f.swt, symbol_stats(code.word(w), code.alphabet()).swt);
    return f;
}

// Fixed contiguous chunks of trials; integer tallies summed in chunk order.
template <class Trial>
Tally run_trials(std::size_t trials, unsigned threads, const Trial& trial) {
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
    std::vector<Tally> parts(threads);
    std::vector<std::exception_ptr> errors(threads);
    auto work = [&](unsigned t) {
        try {
            const std::size_t lo = trials * t / threads, hi = trials * (t + 1) / threads;
            for (std::size_t i = lo; i < hi; ++i) trial(i, parts[t]);
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    Tally total;
    for (unsigned t = 0; t < threads; ++t) {
        if (errors[t]) std::rethrow_exception(errors[t]);
        total.errors += parts[t].errors;
        total.ties += parts[t].ties;
    }
    return total;
}

void decode_trial(const Code& code, std::size_t index, DetectorOutput v, bool nb, int swt, Tally& tally) {
    if (nb) v = narrowband_detect(std::move(v), swt);
    const DecodeResult dec = min_dist_decode(code, v);
    tally.errors += static_cast<std::size_t>(hamming(code.word(dec.chosen), code.word(index)));
    tally.ties += dec.tie;
}

std::size_t pick_word(const Code& code, std::uint64_t seed, std::size_t sweep, std::size_t trial) {
    Rng rng = make_stream({seed, sweep, trial, 0});
    return std::uniform_int_distribution<std::size_t>(0, code.size() - 1)(rng);
}

std::string format_value(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", std::round(x * 1e9) / 1e9);
    std::string s = buf;
    return s == "-0" ? "0" : s;
}

}  // namespace

std::vector<double> parse_sweep(const std::string& text) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size() || !std::isfinite(v))
            throw Error(ErrorCode::parse, "bad number '" + s + "' in sweep '" + text + "'");
        return v;
    };
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() != 3) throw Error(ErrorCode::parse, "sweep must be start:stop:step");
        const double start = number(parts[0]), stop = number(parts[1]), step = number(parts[2]);
        if (step <= 0 || stop < start) throw Error(ErrorCode::parse, "sweep needs step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(number(item));
    if (out.empty()) throw Error(ErrorCode::parse, "empty sweep");
    return out;
}

SerReport run_ser(std::span<const Code* const> codes, const ChannelExperiment& spec) {
    if (spec.trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
    SerReport report;
    report.layout = SerReport::Layout::channel;
    for (const Code* code : codes) {
        const CodeFacts f = facts(*code);
        for (bool nb : spec.nb_modes) {
            for (std::size_t si = 0; si < spec.p_values.size(); ++si) {
                ChannelConfig cfg;
                cfg.p = spec.p_values[si];
                cfg.Q = spec.Q;
                cfg.durations = spec.durations;
                cfg.start_policy = spec.start_policy;
                const Tally tally = run_trials(spec.trials, spec.threads, [&](std::size_t trial, Tally& t) {
                    const std::size_t index = pick_word(*code, spec.seed, si, trial);
                    Rng rng = make_stream({spec.seed, si, trial, 1});
                    auto word = code->word(index);
                    decode_trial(*code, index, apply_plan(word, code->alphabet(), sample_plan(word, code->alphabet(), cfg, rng)),
                                 nb, f.swt, t);
                });
                SerRow row;
                row.code_id = code->id();
                row.n = code->length();
                row.q = code->alphabet();
                row.d = f.d;
                row.swt = f.swt;
                row.x = cfg.p;
                row.Q = spec.Q;
                row.trials = spec.trials;
                row.nb_detect = nb;
                row.ties = tally.ties;
                row.symbol_errors = tally.errors;
                row.symbols_total = spec.trials * static_cast<std::size_t>(code->length());
                report.rows.push_back(row);
            }
        }
    }
    return report;
}

SerReport run_waveform_ser(std::span<const Code* const> codes, const WaveformExperiment& spec) {
    if (spec.trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
    SerReport report;
    report.layout = SerReport::Layout::waveform;
    for (const Code* code : codes) {
        if (code->alphabet() > spec.config.q)
            throw Error(ErrorCode::invalid_argument, "code alphabet exceeds the number of tones");
        const CodeFacts f = facts(*code);
        for (std::size_t si = 0; si < spec.esn0_db.size(); ++si) {
            WaveformConfig cfg = spec.config;
            cfg.esn0_db = spec.esn0_db[si];
            const Tally tally = run_trials(spec.trials, spec.threads, [&](std::size_t trial, Tally& t) {
                const std::size_t index = pick_word(*code, spec.seed, si, trial);
                Rng rng = make_stream({spec.seed, si, trial, 1});
                const double phase = std::uniform_real_distribution<double>(0.0, cfg.t_ac / 2)(rng);
                auto word = code->word(index);
                auto samples = modulate(word, cfg);
                const auto noise = gen_noise(cfg, samples.size(), phase, rng);
                for (std::size_t k = 0; k < samples.size(); ++k) samples[k] += noise[k];
                DetectorOutput v = square_law_detect(samples, cfg);
                v.q = code->alphabet();
                for (auto& slot : v.slots) slot &= v.full_mask();
                decode_trial(*code, index, std::move(v), spec.nb_detect, f.swt, t);
            });
            SerRow row;
            row.code_id = code->id();
            row.n = code->length();
            row.q = code->alphabet();
            row.d = f.d;
            row.swt = f.swt;
            row.x = spec.esn0_db[si];
            row.trials = spec.trials;
            row.nb_detect = spec.nb_detect;
            row.ties = tally.ties;
            row.symbol_errors = tally.errors;
            row.symbols_total = spec.trials * static_cast<std::size_t>(code->length());
            report.rows.push_back(row);
        }
    }
    return report;
}

std::string format_ser(double value) {
    if (value == 0) return "0";
    const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
    const int decimals = std::max(0, 5 - exponent);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string format_csv(const SerReport& report) {
    std::ostringstream out;
    if (report.layout == SerReport::Layout::channel) {
        out << "code_id,n,q,d,swt,p,Q,trials,nb_detect,ties,symbol_errors,symbols_total,ser\n";
        for (const auto& r : report.rows)
            out << r.code_id << ',' << r.n << ',' << r.q << ',' << r.d << ',' << r.swt << ',' << format_value(r.x)
                << ',' << format_value(r.Q) << ',' << r.trials << ',' << (r.nb_detect ? "on" : "off") << ','
                << r.ties << ',' << r.symbol_errors << ',' << r.symbols_total << ',' << format_ser(r.ser()) << '\n';
    } else {
        out << "code_id,esn0_db,trials,symbol_errors,ser\n";
        for (const auto& r : report.rows)
            out << r.code_id << ',' << format_value(r.x) << ',' << r.trials << ',' << r.symbol_errors << ','
                << format_ser(r.ser()) << '\n';
    }
    return out.str();
}

void emit_csv(const SerReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    out << format_csv(report);
    if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

}  // namespace symeq
