#include "symeq/symeq.h"

#include <cstring>
#include <sstream>
#include <string>

#include "symeq/channel.hpp"
#include "symeq/code_io.hpp"
#include "symeq/construct.hpp"
#include "symeq/decoder.hpp"
#include "symeq/error.hpp"
#include "symeq/harness.hpp"
#include "symeq/waveform.hpp"

struct symeq_code {
    symeq::Code code;
    std::vector<std::string> comments;
};

struct symeq_text {
    std::string data;
};

namespace {

thread_local std::string last_error;

symeq_status to_status(symeq::ErrorCode code) {
    return static_cast<symeq_status>(static_cast<int>(code));
}

template <class F>
symeq_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return SYMEQ_OK;
    } catch (const symeq::Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown failure";
    }
    return SYMEQ_E_INTERNAL;
}

void need(bool ok, const char* what) {
    if (!ok) throw symeq::Error(symeq::ErrorCode::invalid_argument, what);
}

symeq_text* make_text(std::string s) { return new symeq_text{std::move(s)}; }

std::vector<const symeq::Code*> unwrap(const symeq_code* const* codes, size_t count) {
    need(codes != nullptr && count > 0, "at least one code is required");
    std::vector<const symeq::Code*> out;
    for (size_t i = 0; i < count; ++i) {
        need(codes[i] != nullptr, "null code handle");
        out.push_back(&codes[i]->code);
    }
    return out;
}

std::string join(const std::vector<int>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

}  // namespace

extern "C" {

const char* symeq_last_error(void) { return last_error.c_str(); }

const char* symeq_status_name(symeq_status status) {
    switch (status) {
        case SYMEQ_OK: return "ok";
        case SYMEQ_E_INVALID_ARGUMENT: return "invalid-argument";
        case SYMEQ_E_INVALID_CODEWORD: return "invalid-codeword";
        case SYMEQ_E_UNDEFINED_DISTANCE: return "undefined-distance";
        case SYMEQ_E_OUT_OF_RANGE: return "out-of-range";
        case SYMEQ_E_PARSE: return "parse-error";
        case SYMEQ_E_IO: return "io-error";
        case SYMEQ_E_CONSTRUCTION_FAILED: return "construction-failed";
        case SYMEQ_E_ENUMERATION_CAP: return "enumeration-cap";
        case SYMEQ_E_NO_WITNESS: return "no-witness";
        case SYMEQ_E_INVALID_PLAN: return "invalid-plan";
        case SYMEQ_E_FRAMING: return "framing-error";
        case SYMEQ_E_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* symeq_text_data(const symeq_text* text) { return text ? text->data.c_str() : ""; }
size_t symeq_text_size(const symeq_text* text) { return text ? text->data.size() : 0; }
void symeq_text_free(symeq_text* text) { delete text; }

symeq_status symeq_code_read(const char* path, symeq_code** out) {
    return guarded([&] {
        need(path && out, "null argument");
        *out = new symeq_code{symeq::read_code(path), {}};
    });
}

symeq_status symeq_code_parse(const char* text, symeq_code** out) {
    return guarded([&] {
        need(text && out, "null argument");
        *out = new symeq_code{symeq::parse_code(text), {}};
    });
}

symeq_status symeq_code_create(int n, int q, size_t size, const uint8_t* symbols, const char* id, symeq_code** out) {
    return guarded([&] {
        need(out && symbols && n > 0, "null argument");
        std::vector<symeq::Symbol> data(symbols, symbols + size * static_cast<size_t>(n));
        *out = new symeq_code{symeq::Code(n, q, std::move(data), id ? id : ""), {}};
    });
}

void symeq_code_free(symeq_code* code) { delete code; }

symeq_status symeq_code_shape(const symeq_code* code, int* n, int* q, size_t* size) {
    return guarded([&] {
        need(code, "null code");
        if (n) *n = code->code.length();
        if (q) *q = code->code.alphabet();
        if (size) *size = code->code.size();
    });
}

const char* symeq_code_id(const symeq_code* code) { return code ? code->code.id().c_str() : ""; }

symeq_status symeq_code_word(const symeq_code* code, size_t index, uint8_t* out) {
    return guarded([&] {
        need(code && out, "null argument");
        auto w = code->code.word(index);
        std::memcpy(out, w.data(), w.size());
    });
}

symeq_status symeq_code_format(const symeq_code* code, symeq_text** out) {
    return guarded([&] {
        need(code && out, "null argument");
        *out = make_text(symeq::format_code(code->code, code->comments));
    });
}

symeq_status symeq_code_write(const symeq_code* code, const char* path) {
    return guarded([&] {
        need(code && path, "null argument");
        symeq::write_code(code->code, path, code->comments);
    });
}

symeq_status symeq_code_classify(const symeq_code* code, symeq_class* out) {
    return guarded([&] {
        need(code && out, "null argument");
        auto c = symeq::classify(code->code);
        *out = {c.bounded_symbol_weight, c.constant_composition, c.constant_partition, c.minimum_symbol_weight,
                c.equitable,             c.fpa,                  c.injection,          c.permutation};
    });
}

symeq_status symeq_code_min_distance(const symeq_code* code, int* d) {
    return guarded([&] {
        need(code && d, "null argument");
        *d = symeq::min_distance(code->code);
    });
}

symeq_status symeq_code_profile(const symeq_code* code, int d, int* e_table, int* capability) {
    return guarded([&] {
        need(code && e_table, "null argument");
        auto p = symeq::capability_profile(code->code, d);
        std::copy(p.e_table.begin(), p.e_table.end(), e_table);
        if (capability) *capability = p.capability.value_or(0);
    });
}

symeq_status symeq_code_windowed_profile(const symeq_code* code, const int* durations, size_t count, int* e_table) {
    return guarded([&] {
        need(code && e_table && (durations || count == 0), "null argument");
        auto t = symeq::windowed_profile(code->code, std::span<const int>(durations, count));
        std::copy(t.begin(), t.end(), e_table);
    });
}

symeq_status symeq_f_star(int n, int q, int e, int* out) {
    return guarded([&] {
        need(out, "null argument");
        *out = symeq::f_star(n, q, e);
    });
}

symeq_status symeq_construct(const symeq_build_params* params, symeq_code** out) {
    return guarded([&] {
        need(params && out, "null argument");
        symeq::ConstructionTarget t;
        t.n = params->n;
        t.q = params->q;
        t.d_min = params->d_min;
        t.size_target = params->size;
        t.r = params->r;
        t.seed = params->seed;
        t.budget = params->budget;
        t.relax_partition = params->relax_partition != 0;
        std::optional<symeq::Construction> c;
        switch (params->kind) {
            case SYMEQ_BUILD_PARTITION:
                need(params->partition && params->partition_len > 0, "partition target missing");
                t.partition = std::vector<int>(params->partition, params->partition + params->partition_len);
                c = symeq::search_partition_code(t);
                break;
            case SYMEQ_BUILD_INJECTION:
                c = symeq::injection_esw(t);
                break;
            case SYMEQ_BUILD_RS_COSET:
            case SYMEQ_BUILD_RS_SUBCODE: {
                auto field = symeq::GaloisField::standard(t.q);
                if (t.n == 0) t.n = t.q - 1;
                const int k = params->k > 0 ? params->k : t.n - t.d_min + 1;
                auto base = symeq::rs_code(field, t.n, k);
                if (t.d_min < 1) t.d_min = base.distance();
                c = params->kind == SYMEQ_BUILD_RS_COSET ? symeq::rs_coset(base, t)
                                                        : symeq::rs_subcode_expurgate(base, t);
                break;
            }
            default:
                need(false, "unknown construction kind");
        }
        *out = new symeq_code{std::move(c->code), {c->provenance}};
    });
}

size_t symeq_table_row_count(void) { return symeq::table_rows().size(); }

const char* symeq_table_row_id(size_t index) {
    const auto& rows = symeq::table_rows();
    return index < rows.size() ? rows[index].id.c_str() : nullptr;
}

symeq_status symeq_table_row_info(const char* id, int* n, int* d, int* r, int* q, size_t* size, int* capability) {
    return guarded([&] {
        need(id, "null row id");
        const auto& row = symeq::table_row(id);
        if (n) *n = row.n;
        if (d) *d = row.d;
        if (r) *r = row.r;
        if (q) *q = row.q;
        if (size) *size = row.size;
        if (capability) *capability = row.capability;
    });
}

symeq_status symeq_construct_table_row(const char* id, uint64_t seed, symeq_code** out) {
    return guarded([&] {
        need(id && out, "null argument");
        auto c = symeq::build_table_code(symeq::table_row(id), seed);
        *out = new symeq_code{std::move(c.code), {c.provenance}};
    });
}

symeq_status symeq_parse_sweep(const char* text, double* values, size_t capacity, size_t* count) {
    return guarded([&] {
        need(text && count, "null argument");
        auto v = symeq::parse_sweep(text);
        *count = v.size();
        need(values == nullptr || capacity >= v.size(), "sweep buffer too small");
        if (values) std::copy(v.begin(), v.end(), values);
    });
}

symeq_status symeq_simulate(const symeq_code* const* codes, size_t count, const symeq_channel_params* params,
                            symeq_text** csv) {
    return guarded([&] {
        need(params && csv && params->p && params->p_count > 0, "null argument or empty sweep");
        auto list = unwrap(codes, count);
        symeq::ChannelExperiment spec;
        spec.p_values.assign(params->p, params->p + params->p_count);
        spec.Q = params->Q;
        if (params->durations) spec.durations.assign(params->durations, params->durations + params->duration_count);
        spec.start_policy = params->aligned_starts ? symeq::StartPolicy::aligned : symeq::StartPolicy::overlapping;
        if (params->nb_modes) {
            spec.nb_modes.clear();
            for (size_t i = 0; i < params->nb_mode_count; ++i) spec.nb_modes.push_back(params->nb_modes[i] != 0);
        }
        spec.trials = params->trials;
        spec.seed = params->seed;
        spec.threads = params->threads;
        *csv = make_text(symeq::format_csv(symeq::run_ser(list, spec)));
    });
}

symeq_status symeq_waveform(const symeq_code* const* codes, size_t count, const symeq_waveform_params* params,
                            symeq_text** csv) {
    return guarded([&] {
        need(params && csv && params->esn0_db && params->esn0_count > 0, "null argument or empty sweep");
        auto list = unwrap(codes, count);
        symeq::WaveformExperiment spec;
        spec.esn0_db.assign(params->esn0_db, params->esn0_db + params->esn0_count);
        spec.nb_detect = params->nb_detect != 0;
        spec.trials = params->trials;
        spec.seed = params->seed;
        spec.threads = params->threads;
        *csv = make_text(symeq::format_csv(symeq::run_waveform_ser(list, spec)));
    });
}

symeq_status symeq_average_sigma2(double* out) {
    return guarded([&] {
        need(out, "null argument");
        *out = symeq::average_sigma2(symeq::WaveformConfig{});
    });
}

symeq_status symeq_transmit(const symeq_code* code, size_t index, double p, double Q, uint64_t seed, uint64_t* slots,
                            symeq_text** plan) {
    return guarded([&] {
        need(code && slots, "null argument");
        symeq::ChannelConfig cfg;
        cfg.p = p;
        cfg.Q = Q;
        symeq::Rng rng(seed);
        auto t = symeq::transmit(code->code.word(index), code->code.alphabet(), cfg, rng);
        std::copy(t.output.slots.begin(), t.output.slots.end(), slots);
        if (plan) *plan = make_text(symeq::format_plan(t.plan));
    });
}

symeq_status symeq_apply_plan(const symeq_code* code, size_t index, const char* plan, uint64_t* slots) {
    return guarded([&] {
        need(code && plan && slots, "null argument");
        auto v = symeq::apply_plan(code->code.word(index), code->code.alphabet(), symeq::parse_plan(plan));
        std::copy(v.slots.begin(), v.slots.end(), slots);
    });
}

symeq_status symeq_decode(const symeq_code* code, const uint64_t* slots, int nb_r, size_t* chosen, int* distance,
                          int* tie) {
    return guarded([&] {
        need(code && slots, "null argument");
        symeq::DetectorOutput v;
        v.q = code->code.alphabet();
        v.slots.assign(slots, slots + code->code.length());
        for (auto s : v.slots) need((s & ~v.full_mask()) == 0, "slot mask has symbols outside the alphabet");
        if (nb_r > 0) v = symeq::narrowband_detect(std::move(v), nb_r);
        auto r = symeq::min_dist_decode(code->code, v);
        if (chosen) *chosen = r.chosen;
        if (distance) *distance = r.distance;
        if (tie) *tie = r.tie;
    });
}

symeq_status symeq_verify_theorem1(const symeq_code* code, const int* budget, uint64_t cap, int* agrees,
                                   symeq_text** report) {
    return guarded([&] {
        need(code && budget, "null argument");
        symeq::Theorem1Budget b{budget[0], budget[1], budget[2], budget[3], budget[4]};
        auto v = symeq::theorem1_oracle(code->code, b, cap ? cap : 100'000'000);
        std::ostringstream out;
        out << "code=" << code->code.id() << " n=" << code->code.length() << " q=" << code->code.alphabet()
            << " d=" << v.d << '\n'
            << "budget e_nb=" << b.e_nb << " e_fade=" << b.e_fade << " e_imp=" << b.e_imp << " e_ins=" << b.e_ins
            << " e_del=" << b.e_del << '\n'
            << "theorem_sum=" << v.theorem_sum << " predicted=" << (v.predicted ? "correct" : "not-guaranteed") << '\n'
            << "placements=" << v.placements << '\n';
        if (v.all_correct) {
            out << "verdict=all-correct\n";
        } else {
            out << "verdict=failure word=" << *v.failing_word << '\n';
            std::istringstream plan(symeq::format_plan(*v.failing_plan));
            for (std::string line; std::getline(plan, line);) out << "plan " << line << '\n';
        }
        const bool ok = v.predicted == v.all_correct;
        out << "agrees=" << (ok ? "yes" : "no") << '\n';
        if (agrees) *agrees = ok;
        if (report) *report = make_text(out.str());
    });
}

symeq_status symeq_verify_prop1(const symeq_code* better, const symeq_code* worse, int* certified,
                                symeq_text** report) {
    return guarded([&] {
        need(better && worse, "null argument");
        auto w = symeq::prop1_witness(better->code, worse->code);
        std::ostringstream out;
        out << "e_prime=" << w.e_prime << " d=" << w.d << '\n'
            << "budget narrowband=" << w.nb_errors << " impulse=" << w.impulse_errors << '\n'
            << "first=" << better->code.id() << " certified=" << (w.better_certified ? "yes" : "no")
            << " pairs=" << w.pairs_checked << '\n'
            << "second=" << worse->code.id() << " failing word=" << w.transmitted << " competitor=" << w.competitor
            << " winners=" << w.failing_decode.winners.size() << " chosen=" << w.failing_decode.chosen << '\n';
        std::istringstream plan(symeq::format_plan(w.failing_plan));
        for (std::string line; std::getline(plan, line);) out << "plan " << line << '\n';
        if (certified) *certified = w.better_certified;
        if (report) *report = make_text(out.str());
    });
}

symeq_status symeq_verify_lemma2(const symeq_code* code, const int* durations, size_t count, int* equal,
                                 symeq_text** report) {
    return guarded([&] {
        need(code && (durations || count == 0), "null argument");
        auto r = symeq::verify_lemma2(code->code, std::span<const int>(durations, count));
        std::ostringstream out;
        out << "code=" << code->code.id() << " durations=" << join(r.durations)
            << " reference=" << r.reference_duration << '\n'
            << "e windowed reference\n";
        for (size_t e = 0; e < r.windowed.size(); ++e)
            out << e + 1 << ' ' << r.windowed[e] << ' ' << r.reference[e] << '\n';
        out << "equal=" << (r.equal ? "yes" : "no") << '\n';
        if (equal) *equal = r.equal;
        if (report) *report = make_text(out.str());
    });
}

}  // extern "C"
