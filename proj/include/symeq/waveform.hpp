#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "symeq/code.hpp"
#include "symeq/detector.hpp"
#include "symeq/rng.hpp"

namespace symeq {

struct WaveformConfig {
    double t_ac = 1.0 / 60.0;          // mains period (s)
    int samples_per_symbol = 500;
    int q = 17;
    double tone_spacing = 10800.0;     // f_m = tone_spacing * (m + 1), m 0-based
    double a = 1.2e-5;                 // filter constant of exp(-a|f|/2)
    double es = 1.0;                   // symbol energy
    std::optional<double> esn0_db;     // unset: noise left at its raw level
    double threshold_fraction = 0.25;  // detect when E_hat > threshold_fraction * es
    bool cyclostationary = true;       // false: unit variance
    bool shaping = true;               // false: no spectral shaping
    int guard = 1024;                  // samples simulated on each side

    double symbol_period() const noexcept { return t_ac / 18.0; }
    double sample_rate() const noexcept { return samples_per_symbol / symbol_period(); }
    double tone(int m) const noexcept { return tone_spacing * (m + 1); }
};

/// Instantaneous noise variance; period t_ac / 2.
double sigma2(double t, const WaveformConfig& cfg);

/// sigma2 at sample k of the grid k / fs; the index is reduced modulo the
/// half period, which spans 9 bursts.
double sigma2_sample(std::int64_t k, const WaveformConfig& cfg);

/// Mean of sigma2 over one period, by adaptive Gauss-Kronrod quadrature.
double average_sigma2(const WaveformConfig& cfg);

/// Amplitude response exp(-a|f|/2), or 1 when shaping is off.
double filter_gain(double f, const WaveformConfig& cfg);

/// Average over the q tones of the one-sided noise spectral density seen by
/// the detector before calibration: 2 * mean(sigma2) * gain(f_m)^2 / fs.
double raw_noise_density(const WaveformConfig& cfg);

/// Multiplier applied to the raw noise so that es / N0 matches esn0_db.
double noise_scale(const WaveformConfig& cfg);

/// `count` noise samples; sample k sits at time phase + k / fs.
std::vector<double> gen_noise(const WaveformConfig& cfg, std::size_t count, double phase, Rng& rng);

/// Concatenated tone bursts sqrt(2 es / T_s) cos(2 pi f_m t).
std::vector<double> modulate(std::span<const Symbol> word, const WaveformConfig& cfg);

/// Correlator energy estimate of every tone over one burst.
std::vector<double> tone_energies(std::span<const double> burst, const WaveformConfig& cfg);

DetectorOutput square_law_detect(std::span<const double> samples, const WaveformConfig& cfg);

}  // namespace symeq
