#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "symeq/channel.hpp"
#include "symeq/construct.hpp"
#include "symeq/decoder.hpp"
#include "symeq/harness.hpp"
#include "symeq/waveform.hpp"

using namespace symeq;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
    std::ostringstream out;
    out << x;
    return out.str();
}

Code cyclic(int q) {
    std::vector<std::vector<int>> words;
    for (int k = 0; k < q; ++k) {
        std::vector<int> w;
        for (int i = 0; i < q; ++i) w.push_back((i + k) % q);
        words.push_back(w);
    }
    return Code::from_words(q, q, words, "cyclic5");
}

Code example1() { return Code::from_words(3, 4, {{0, 1, 2}, {1, 2, 3}, {2, 3, 0}, {3, 0, 1}}, "example1"); }

std::map<std::string, Code> table_codes;

Outcome a1() {
    Outcome o;
    const auto t0 = Clock::now();
    int matched = 0;
    for (const auto& row : table_rows()) {
        auto built = build_table_code(row, 1);
        const auto& c = built.code;
        const int d = min_distance(c);
        const int swt = classify(c).bounded_symbol_weight;
        const auto cap = capability_profile(c, d).capability;
        const bool ok = c.length() == row.n && d == row.d && swt == row.r && c.size() == row.size &&
                        cap && *cap == row.capability;
        if (ok)
            ++matched;
        else
            o.detail += " mismatch:" + row.id + "(d=" + std::to_string(d) + ",swt=" + std::to_string(swt) +
                        ",size=" + std::to_string(c.size()) + ",c=" + (cap ? std::to_string(*cap) : "none") + ")";
        table_codes.emplace(row.id, c);
    }
    const double secs = seconds_since(t0);
    o.pass = matched == static_cast<int>(table_rows().size()) && secs < 300;
    o.detail = std::to_string(matched) + "/" + std::to_string(table_rows().size()) + " rows match in " +
               fmt(secs) + " s" + o.detail;
    return o;
}

Outcome a2() {
    Outcome o;
    const auto t0 = Clock::now();
    int pairs = 0, bad = 0;
    for (int n = 1; n <= 12; ++n)
        for (int q = 2; q <= 6; ++q) {
            ++pairs;
            if (oracle::brute_fstar(n, q) != f_star_table(n, q)) ++bad;
        }
    const double secs = seconds_since(t0);
    o.pass = bad == 0 && secs < 120;
    o.detail = std::to_string(pairs - bad) + "/" + std::to_string(pairs) + " (n,q) pairs agree in " + fmt(secs) + " s";
    return o;
}

Outcome a3() {
    Outcome o;
    std::mt19937_64 rng(3);
    int checked = 0, bad = 0, generated = 0;
    while (checked < 10000) {
        const int q = 2 + static_cast<int>(rng() % 15);
        const int n = 1 + static_cast<int>(rng() % 40);
        std::vector<int> w;
        if (rng() % 2)
            w = oracle::random_equitable_word(rng, n, q);
        else
            w = oracle::random_word(rng, n, q);
        const std::vector<Symbol> u(w.begin(), w.end());
        ++generated;
        if (!is_equitable_word(u, q)) continue;
        ++checked;
        const int r = (n + q - 1) / q, t = r * q - n;
        std::vector<int> expected(static_cast<std::size_t>(q - t), r);
        expected.insert(expected.end(), static_cast<std::size_t>(t), r - 1);
        if (symbol_stats(u, q).partition != expected || equitable_partition(n, q) != expected) ++bad;
    }
    o.pass = bad == 0;
    o.detail = std::to_string(checked - bad) + "/" + std::to_string(checked) + " equitable words (of " +
               std::to_string(generated) + " sampled) have the forced partition";
    return o;
}

Outcome a4() {
    Outcome o;
    std::mt19937_64 rng(4);
    int cases = 0, bad = 0;
    for (int k = 0; k < 100; ++k) {
        const int n = 1 + static_cast<int>(rng() % 8), q = 2 + static_cast<int>(rng() % 4);
        auto code = oracle::random_code(rng, n, q, 20);
        for (int s = 0; s < 10; ++s) {
            std::vector<int> durations(1 + rng() % 4);
            for (int& l : durations) l = 1 + static_cast<int>(rng() % 12);
            const int ref = std::min(n, *std::max_element(durations.begin(), durations.end()));
            const auto lib = windowed_profile(code, durations);
            for (int e = 1; e <= q; ++e) {
                ++cases;
                const int windowed = oracle::windowed_E(code, e, durations);
                const int single = oracle::windowed_E(code, e, {ref});
                if (windowed != single || lib[static_cast<std::size_t>(e - 1)] != windowed) ++bad;
            }
        }
    }
    o.pass = bad == 0;
    o.detail = std::to_string(cases - bad) + "/" + std::to_string(cases) + " (code, L, e) cases agree";
    return o;
}

Outcome a5() {
    Outcome o;
    const auto t0 = Clock::now();
    std::uint64_t budgets = 0, placements = 0;
    int bad = 0;
    for (const Code& code : {cyclic(5), example1()}) {
        const int n = code.length(), q = code.alphabet();
        const int d = min_distance(code);
        const auto e = narrowband_profile(code);
        auto E = [&](int k) { return k ? e[static_cast<std::size_t>(k - 1)] : 0; };
        for (int nb = 0; nb <= q; ++nb)
            for (int fade = 0; fade <= q; ++fade)
                for (int imp = 0; imp <= n; ++imp)
                    for (int ins = 0; ins <= n * (q - 1); ++ins)
                        for (int del = 0; del <= n; ++del) {
                            if (del + imp + ins + E(fade) + E(nb) >= d) continue;
                            auto v = theorem1_oracle(code, {nb, fade, imp, ins, del});
                            ++budgets;
                            placements += v.placements;
                            if (!v.all_correct || !v.predicted) ++bad;
                        }
        auto over = theorem1_oracle(code, {0, 0, d, 0, 0});
        if (over.all_correct || !over.failing_plan) {
            ++bad;
        } else {
            auto out = apply_plan(code.word(*over.failing_word), q, *over.failing_plan);
            auto r = min_dist_decode(code, out);
            if (!r.tie && r.chosen == *over.failing_word) ++bad;
        }
    }
    const double secs = seconds_since(t0);
    o.pass = bad == 0 && secs < 600;
    o.detail = std::to_string(budgets) + " budgets, " + std::to_string(placements) +
               " placements decode uniquely; e_IMP=d fails on both codes; " + fmt(secs) + " s" +
               (bad ? "; " + std::to_string(bad) + " disagreements" : "");
    return o;
}

Outcome a6() {
    Outcome o;
    const auto& esw = table_codes.at("ESW_25_24_2_17");
    const auto& msw = table_codes.at("MSW_25_24_2_17");
    auto w = prop1_witness(esw, msw);
    auto out = apply_plan(msw.word(w.transmitted), msw.alphabet(), w.failing_plan);
    auto r = min_dist_decode(msw, out);
    const bool defeated = r.tie || r.chosen != w.transmitted;
    const bool budget_ok = static_cast<int>(w.failing_plan.narrowband.size()) <= w.nb_errors &&
                           static_cast<int>(w.failing_plan.impulses.size()) <= w.impulse_errors;
    o.pass = w.better_certified && defeated && budget_ok;
    o.detail = "e'=" + std::to_string(w.e_prime) + " budget " + std::to_string(w.nb_errors) + " nb + " +
               std::to_string(w.impulse_errors) + " impulse; ESW certified=" + (w.better_certified ? "yes" : "no") +
               " over " + std::to_string(w.pairs_checked) + " pairs; MSW word " + std::to_string(w.transmitted) +
               (defeated ? " defeated" : " not defeated");
    return o;
}

Outcome a7() {
    Outcome o;
    std::mt19937_64 rng(7);
    int bad = 0, equitable = 0;
    for (int k = 0; k < 1000; ++k) {
        const int n = 1 + static_cast<int>(rng() % 8), q = 2 + static_cast<int>(rng() % 4);
        std::set<std::vector<int>> words;
        const int m = 1 + static_cast<int>(rng() % 8);
        const int mode = static_cast<int>(rng() % 3);
        for (int j = 0; j < m; ++j)
            words.insert(mode == 2 || (mode == 1 && j == 0) ? oracle::random_word(rng, n, q)
                                                            : oracle::random_equitable_word(rng, n, q));
        auto code = Code::from_words(n, q, {words.begin(), words.end()});
        const auto fstar = oracle::brute_fstar(n, q);
        bool attains = true;
        for (int e = 1; e <= q; ++e) attains &= oracle::subset_E(code, e) == fstar[static_cast<std::size_t>(e - 1)];
        const bool eq = classify(code).equitable;
        equitable += eq;
        if (attains != eq) ++bad;
    }
    o.pass = bad == 0;
    o.detail = std::to_string(1000 - bad) + "/1000 codes agree (" + std::to_string(equitable) + " equitable)";
    return o;
}

Outcome a8() {
    Outcome o;
    const auto t0 = Clock::now();
    const std::vector<std::pair<std::string, std::string>> pairs = {{"ESW_11_6_2_10", "MSW_11_6_2_10"},
                                                                      {"ESW_25_24_2_17", "MSW_25_24_2_17"}};
    ChannelExperiment spec;
    spec.p_values = {0.1, 0.2, 0.3, 0.4, 0.5};
    spec.Q = 0.05;
    spec.trials = 10000;
    spec.seed = 1;
    for (const auto& [e, m] : pairs) {
        const Code* codes[] = {&table_codes.at(e), &table_codes.at(m)};
        auto report = run_ser(codes, spec);
        std::map<std::string, std::vector<double>> ser;
        for (const auto& row : report.rows) ser[row.code_id].push_back(row.ser());
        o.detail += e.substr(4, 2) == "11" ? "n=11:" : "; n=25:";
        for (std::size_t i = 0; i < spec.p_values.size(); ++i) {
            const double a = ser[e][i], b = ser[m][i];
            o.detail += " p=" + fmt(spec.p_values[i]) + " " + format_ser(a) + (a < b ? "<" : ">=") + format_ser(b);
            if (spec.p_values[i] >= 0.2 - 1e-9 && !(a < b)) o.pass = false;
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= 600) o.pass = false;
    o.detail += "; " + fmt(secs) + " s";
    return o;
}

Outcome a9() {
    Outcome o;
    WaveformConfig cfg;
    const double avg = average_sigma2(cfg);
    double worst_period = 0;
    const int half = 9 * cfg.samples_per_symbol;
    for (int k = 0; k < half; ++k) {
        const double base = sigma2_sample(k, cfg);
        for (int m : {1, 2, 7, 1000})
            worst_period = std::max(worst_period, std::abs(sigma2_sample(k + m * half, cfg) - base) / base);
    }
    double worst_ortho = 0;
    for (Symbol s = 0; s < cfg.q; ++s) {
        const std::vector<Symbol> word = {s};
        auto e = tone_energies(modulate(word, cfg), cfg);
        for (int m = 0; m < cfg.q; ++m)
            worst_ortho = std::max(worst_ortho, std::abs(e[static_cast<std::size_t>(m)] - (m == s ? cfg.es : 0.0)) / cfg.es);
    }
    o.pass = avg >= 0.90 && avg <= 1.00 && worst_period <= 1e-12 && worst_ortho <= 1e-9;
    o.detail = "mean variance " + fmt(avg) + "; periodicity error " + fmt(worst_period) + "; orthogonality error " +
               fmt(worst_ortho);
    return o;
}

Outcome a10() {
    Outcome o;
    WaveformExperiment spec;
    spec.esn0_db = {0, 1, 2, 3, 4, 5};
    spec.trials = 1000;
    spec.seed = 1;
    const Code* codes[] = {&table_codes.at("ESW_25_24_2_17"), &table_codes.at("MSW_25_24_2_17")};
    auto report = run_waveform_ser(codes, spec);
    std::map<std::string, std::vector<double>> ser;
    for (const auto& row : report.rows) ser[row.code_id].push_back(row.ser());
    const auto& e = ser["ESW_25_24_2_17"];
    const auto& m = ser["MSW_25_24_2_17"];
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i && (e[i] > e[i - 1] || m[i] > m[i - 1])) o.pass = false;
        if ((e[i] > 1e-3 || m[i] > 1e-3) && e[i] > m[i]) o.pass = false;
        o.detail += (i ? " " : "") + fmt(spec.esn0_db[i]) + "dB " + format_ser(e[i]) + "/" + format_ser(m[i]);
    }
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome a11() {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / ("symeq_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string cli = SYMEQ_CLI_PATH;
    auto run = [&](const std::string& args, const std::string& name) {
        const fs::path out = dir / name;
        const std::string cmd = "\"" + cli + "\" " + args + " > \"" + out.string() + "\" 2>&1";
        const int rc = std::system(cmd.c_str());
        return std::pair{rc, slurp(out)};
    };
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"construct table --row ESW_11_6_2_10", "esw11"},
        {"construct table --row MSW_11_6_2_10", "msw11"},
        {"construct esw --n 7 --q 5 --d 4 --size 20", "small"},
        {"fstar --n 25 --q 17", "fstar"},
    };
    int compared = 0, differing = 0, failed = 0;
    for (const auto& [args, name] : commands) {
        auto [rc1, a] = run("--seed 9 " + args, name + ".1");
        auto [rc2, b] = run("--seed 9 " + args, name + ".2");
        ++compared;
        if (rc1 || rc2) ++failed;
        if (a != b) ++differing;
        std::ofstream(dir / (name + ".code"), std::ios::binary) << a;
    }
    const std::string esw = (dir / "esw11.code").string(), msw = (dir / "msw11.code").string();
    const std::vector<std::string> threaded = {
        "simulate " + esw + " " + msw + " --p 0.1:0.5:0.2 --trials 2000 --nb both",
        "waveform " + esw + " --esn0 0:4:2 --trials 100",
        "analyze " + esw,
        "verify prop1 " + esw + " " + msw,
    };
    for (std::size_t k = 0; k < threaded.size(); ++k) {
        std::string reference;
        for (int threads : {1, 1, 2, 3}) {
            auto [rc, out] = run("--seed 5 --threads " + std::to_string(threads) + " " + threaded[k],
                                 "t" + std::to_string(k) + "_" + std::to_string(threads));
            ++compared;
            if (rc) ++failed;
            if (reference.empty())
                reference = out;
            else if (out != reference)
                ++differing;
        }
    }
    fs::remove_all(dir);
    o.pass = differing == 0 && failed == 0;
    o.detail = std::to_string(compared) + " invocations, " + std::to_string(differing) + " differ, " +
               std::to_string(failed) + " nonzero exits";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::vector<std::string> known;
    app.add_option("--known-failures", known, "Criteria expected to fail; exit status is zero only when exactly these fail")
        ->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, Outcome (*)()>> criteria = {
        {"A1 capability table", a1},     {"A2 f* brute force", a2},   {"A3 equitable partition", a3},
        {"A4 windowed durations", a4},   {"A5 exhaustive decoding", a5}, {"A6 growth order witness", a6},
        {"A7 equitable iff optimal", a7}, {"A8 SER ordering", a8},     {"A9 noise model", a9},
        {"A10 waveform SER", a10},       {"A11 determinism", a11},
    };
    std::set<std::string> failed;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
        if (!o.pass) failed.insert(name.substr(0, name.find(' ')));
    }
    const std::set<std::string> expected(known.begin(), known.end());
    if (failed == expected) return 0;
    for (const auto& id : failed)
        if (!expected.count(id)) std::cout << "unexpected failure " << id << '\n';
    for (const auto& id : expected)
        if (!failed.count(id)) std::cout << "listed as known failure but passed: " << id << '\n';
    return 1;
}
