#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symeq/channel.hpp"
#include "symeq/code.hpp"
#include "symeq/decoder.hpp"
#include "symeq/waveform.hpp"

namespace symeq {

/// Inclusive "start:stop:step" sweep, or a single value.
std::vector<double> parse_sweep(const std::string& text);

struct ChannelExperiment {
    std::vector<double> p_values;
    double Q = 0.05;
    std::vector<int> durations;  // empty: {b*n : b = 1..10}
    StartPolicy start_policy = StartPolicy::overlapping;
    std::vector<bool> nb_modes = {true};
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct WaveformExperiment {
    WaveformConfig config;               // esn0_db is overwritten per sweep point
    std::vector<double> esn0_db;
    bool nb_detect = true;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct SerRow {
    std::string code_id;
    int n = 0;
    int q = 0;
    int d = 0;
    int swt = 0;
    double x = 0;  // p or Es/N0 in dB
    double Q = 0;
    std::size_t trials = 0;
    bool nb_detect = false;
    std::size_t ties = 0;
    std::size_t symbol_errors = 0;
    std::size_t symbols_total = 0;

    double ser() const { return symbols_total ? static_cast<double>(symbol_errors) / static_cast<double>(symbols_total) : 0.0; }
};

struct SerReport {
    enum class Layout { channel, waveform };
    Layout layout = Layout::channel;
    std::vector<SerRow> rows;
};

SerReport run_ser(std::span<const Code* const> codes, const ChannelExperiment& spec);
SerReport run_waveform_ser(std::span<const Code* const> codes, const WaveformExperiment& spec);

/// Decimal rendering with six significant digits and no exponent.
std::string format_ser(double value);
std::string format_csv(const SerReport& report);
void emit_csv(const SerReport& report, const std::filesystem::path& path);

// ---- exhaustive and adversarial oracles ----

struct Theorem1Budget {
    int e_nb = 0;
    int e_fade = 0;
    int e_imp = 0;
    int e_ins = 0;
    int e_del = 0;
};

struct Theorem1Verdict {
    int d = 0;
    int theorem_sum = 0;        // e_DEL + e_IMP + e_INS + E(e_F) + E(e_N)
    bool predicted = false;     // theorem_sum < d
    bool all_correct = true;
    std::uint64_t placements = 0;
    std::optional<std::size_t> failing_word;
    std::optional<ErrorPlan> failing_plan;
};

/// Number of decoder runs the exhaustive enumeration needs (saturating).
std::uint64_t theorem1_placements(const Code& code, const Theorem1Budget& budget);

/// Every transmitted word and every placement of exactly the budgeted
/// errors, narrowband at duration n with all starts meeting the word.
Theorem1Verdict theorem1_oracle(const Code& code, const Theorem1Budget& budget,
                                std::uint64_t cap = 100'000'000);

struct Prop1Witness {
    int e_prime = 0;
    int d = 0;
    int nb_errors = 0;
    int impulse_errors = 0;
    bool better_certified = false;   // no placement of the budget defeats the better code
    std::size_t pairs_checked = 0;
    std::size_t transmitted = 0;     // index in the worse code
    std::size_t competitor = 0;
    ErrorPlan failing_plan;
    DecodeResult failing_decode;
};

/// `better` must precede `worse` in the growth order and both must share
/// (n, q, d).
Prop1Witness prop1_witness(const Code& better, const Code& worse);

struct Lemma2Report {
    std::vector<int> durations;
    int reference_duration = 0;
    std::vector<int> windowed;
    std::vector<int> reference;
    bool equal = false;
};

Lemma2Report verify_lemma2(const Code& code, std::span<const int> durations);

}  // namespace symeq
