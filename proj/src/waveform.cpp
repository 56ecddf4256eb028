#include "symeq/waveform.hpp"

#include <fftw3.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "symeq/error.hpp"

namespace symeq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct FftPlans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// FFTW planning is not thread safe; execution with the new-array interface is.
const FftPlans& plans_for(int size) {
    static std::mutex mutex;
    static std::map<int, FftPlans> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(size);
    if (it != cache.end()) return it->second;
    auto* real = static_cast<double*>(fftw_malloc(sizeof(double) * static_cast<std::size_t>(size)));
    auto* spec = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(size / 2 + 1)));
    FftPlans p;
    p.forward = fftw_plan_dft_r2c_1d(size, real, spec, FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_c2r_1d(size, spec, real, FFTW_ESTIMATE);
    fftw_free(real);
    fftw_free(spec);
    return cache.emplace(size, p).first->second;
}

struct FftwDeleter {
    void operator()(void* p) const { fftw_free(p); }
};

template <class T>
std::unique_ptr<T[], FftwDeleter> fftw_array(std::size_t count) {
    return std::unique_ptr<T[], FftwDeleter>(static_cast<T*>(fftw_malloc(sizeof(T) * count)));
}

void check_config(const WaveformConfig& cfg) {
    if (cfg.q < 1 || cfg.q > kMaxAlphabet) throw Error(ErrorCode::invalid_argument, "bad alphabet size");
    if (cfg.samples_per_symbol < 1 || cfg.t_ac <= 0 || cfg.es <= 0)
        throw Error(ErrorCode::invalid_argument, "waveform timing and energy must be positive");
    if (cfg.tone(cfg.q - 1) >= cfg.sample_rate() / 2)
        throw Error(ErrorCode::invalid_argument, "highest tone above the Nyquist frequency");
}

// Cosine/sine tables of every tone over one burst.
struct ToneTables {
    int q = 0;
    int spp = 0;
    double spacing = 0;
    double fs = 0;
    std::vector<double> cos_t;
    std::vector<double> sin_t;
};

const ToneTables& tone_tables(const WaveformConfig& cfg) {
    thread_local ToneTables t;
    const double fs = cfg.sample_rate();
    if (t.q == cfg.q && t.spp == cfg.samples_per_symbol && t.spacing == cfg.tone_spacing && t.fs == fs) return t;
    t.q = cfg.q;
    t.spp = cfg.samples_per_symbol;
    t.spacing = cfg.tone_spacing;
    t.fs = fs;
    const auto size = static_cast<std::size_t>(cfg.q * cfg.samples_per_symbol);
    t.cos_t.resize(size);
    t.sin_t.resize(size);
    for (int m = 0; m < cfg.q; ++m) {
        const double cycles = cfg.tone(m) / fs;
        for (int k = 0; k < cfg.samples_per_symbol; ++k) {
            double x = cycles * k;
            x -= std::floor(x);
            const auto idx = static_cast<std::size_t>(m * cfg.samples_per_symbol + k);
            t.cos_t[idx] = std::cos(kTwoPi * x);
            t.sin_t[idx] = std::sin(kTwoPi * x);
        }
    }
    return t;
}

}  // namespace

double sigma2(double t, const WaveformConfig& cfg) {
    if (!cfg.cyclostationary) return 1.0;
    const double half = cfg.t_ac / 2.0;
    double r = std::fmod(t, half);
    if (r < 0) r += half;
    const double x = kTwoPi * r / cfg.t_ac;
    return 0.23 + 1.38 * std::pow(std::abs(std::sin(x - 0.10)), 1.91) +
           7.17 * std::pow(std::abs(std::sin(x - 0.61)), 157000.0);
}

double sigma2_sample(std::int64_t k, const WaveformConfig& cfg) {
    const std::int64_t half = 9LL * cfg.samples_per_symbol;
    std::int64_t r = k % half;
    if (r < 0) r += half;
    return sigma2(static_cast<double>(r) / cfg.sample_rate(), cfg);
}

double average_sigma2(const WaveformConfig& cfg) {
    if (!cfg.cyclostationary) return 1.0;
    // Integrated once in the phase variable x = 2 pi t / t_ac over [0, pi).
    static const double mean = [] {
        using boost::math::quadrature::gauss_kronrod;
        WaveformConfig unit;
        unit.t_ac = kTwoPi;
        const double peak = std::numbers::pi / 2 + 0.61;
        const double edges[] = {0.0, 0.10, peak - 0.02, peak, peak + 0.02, std::numbers::pi};
        auto f = [&](double x) { return sigma2(x, unit); };
        double total = 0;
        for (std::size_t i = 0; i + 1 < std::size(edges); ++i)
            total += gauss_kronrod<double, 61>::integrate(f, edges[i], edges[i + 1], 15, 1e-10);
        return total / std::numbers::pi;
    }();
    return mean;
}

double filter_gain(double f, const WaveformConfig& cfg) {
    return cfg.shaping ? std::exp(-cfg.a * std::abs(f) / 2.0) : 1.0;
}

double raw_noise_density(const WaveformConfig& cfg) {
    check_config(cfg);
    double mean_gain2 = 0;
    for (int m = 0; m < cfg.q; ++m) {
        const double g = filter_gain(cfg.tone(m), cfg);
        mean_gain2 += g * g;
    }
    mean_gain2 /= cfg.q;
    return 2.0 * average_sigma2(cfg) * mean_gain2 / cfg.sample_rate();
}

double noise_scale(const WaveformConfig& cfg) {
    if (!cfg.esn0_db) return 1.0;
    const double n0 = cfg.es / std::pow(10.0, *cfg.esn0_db / 10.0);
    return std::sqrt(n0 / raw_noise_density(cfg));
}

std::vector<double> gen_noise(const WaveformConfig& cfg, std::size_t count, double phase, Rng& rng) {
    check_config(cfg);
    if (cfg.guard < 0) throw Error(ErrorCode::invalid_argument, "guard must be nonnegative");
    const double fs = cfg.sample_rate();
    const double scale = noise_scale(cfg);
    const std::size_t guard = static_cast<std::size_t>(cfg.guard);
    std::size_t size = 1;
    while (size < count + 2 * guard) size <<= 1;

    std::normal_distribution<double> gauss(0.0, 1.0);
    auto buf = fftw_array<double>(size);
    for (std::size_t j = 0; j < size; ++j) {
        const double t = phase + (static_cast<double>(j) - static_cast<double>(guard)) / fs;
        buf[j] = gauss(rng) * std::sqrt(sigma2(t, cfg));
    }

    if (cfg.shaping) {
        const auto& plans = plans_for(static_cast<int>(size));
        auto spec = fftw_array<fftw_complex>(size / 2 + 1);
        fftw_execute_dft_r2c(plans.forward, buf.get(), spec.get());
        for (std::size_t k = 0; k <= size / 2; ++k) {
            const double g = filter_gain(static_cast<double>(k) * fs / static_cast<double>(size), cfg) /
                             static_cast<double>(size);
            spec[k][0] *= g;
            spec[k][1] *= g;
        }
        fftw_execute_dft_c2r(plans.backward, spec.get(), buf.get());
    }

    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = scale * buf[guard + k];
    return out;
}

std::vector<double> modulate(std::span<const Symbol> word, const WaveformConfig& cfg) {
    check_config(cfg);
    const auto& tables = tone_tables(cfg);
    const double amplitude = std::sqrt(2.0 * cfg.es / cfg.symbol_period());
    const auto spp = static_cast<std::size_t>(cfg.samples_per_symbol);
    std::vector<double> out;
    out.reserve(word.size() * spp);
    for (Symbol s : word) {
        if (s >= cfg.q) throw Error(ErrorCode::invalid_codeword, "symbol outside alphabet");
        const double* c = tables.cos_t.data() + s * spp;
        for (std::size_t k = 0; k < spp; ++k) out.push_back(amplitude * c[k]);
    }
    return out;
}

std::vector<double> tone_energies(std::span<const double> burst, const WaveformConfig& cfg) {
    check_config(cfg);
    const auto spp = static_cast<std::size_t>(cfg.samples_per_symbol);
    if (burst.size() != spp) throw Error(ErrorCode::framing, "burst length differs from samples per symbol");
    const auto& tables = tone_tables(cfg);
    const double norm = 2.0 / (static_cast<double>(spp) * cfg.sample_rate());
    std::vector<double> energy(static_cast<std::size_t>(cfg.q));
    for (int m = 0; m < cfg.q; ++m) {
        const double* c = tables.cos_t.data() + static_cast<std::size_t>(m) * spp;
        const double* s = tables.sin_t.data() + static_cast<std::size_t>(m) * spp;
        double i_sum = 0, q_sum = 0;
        for (std::size_t k = 0; k < spp; ++k) {
            i_sum += burst[k] * c[k];
            q_sum += burst[k] * s[k];
        }
        energy[static_cast<std::size_t>(m)] = norm * (i_sum * i_sum + q_sum * q_sum);
    }
    return energy;
}

DetectorOutput square_law_detect(std::span<const double> samples, const WaveformConfig& cfg) {
    check_config(cfg);
    const auto spp = static_cast<std::size_t>(cfg.samples_per_symbol);
    if (samples.size() % spp != 0)
        throw Error(ErrorCode::framing, "sample count " + std::to_string(samples.size()) +
                                            " is not a multiple of " + std::to_string(spp));
    DetectorOutput v;
    v.q = cfg.q;
    const double threshold = cfg.threshold_fraction * cfg.es;
    for (std::size_t b = 0; b < samples.size() / spp; ++b) {
        auto energy = tone_energies(samples.subspan(b * spp, spp), cfg);
        std::uint64_t mask = 0;
        for (int m = 0; m < cfg.q; ++m)
            if (energy[static_cast<std::size_t>(m)] > threshold) mask |= std::uint64_t{1} << m;
        v.slots.push_back(mask);
    }
    return v;
}

}  // namespace symeq
