#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "symeq/symeq.h"

namespace {

struct Failure {
    int exit_code;
    std::string message;
};

void check(symeq_status s, const std::string& context = {}) {
    if (s == SYMEQ_OK) return;
    std::string msg = std::string(symeq_status_name(s)) + ": " + symeq_last_error();
    if (!context.empty()) msg = context + ": " + msg;
    throw Failure{1, msg};
}

struct CodeDeleter {
    void operator()(symeq_code* c) const { symeq_code_free(c); }
};
struct TextDeleter {
    void operator()(symeq_text* t) const { symeq_text_free(t); }
};
using CodePtr = std::unique_ptr<symeq_code, CodeDeleter>;
using TextPtr = std::unique_ptr<symeq_text, TextDeleter>;

CodePtr load(const std::string& path) {
    symeq_code* c = nullptr;
    check(symeq_code_read(path.c_str(), &c), path);
    return CodePtr(c);
}

std::string take(symeq_text* t) {
    TextPtr holder(t);
    return std::string(symeq_text_data(t), symeq_text_size(t));
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{1, "cannot write " + path};
    out << text;
}

std::vector<double> sweep(const std::string& text) {
    size_t count = 0;
    check(symeq_parse_sweep(text.c_str(), nullptr, 0, &count), "sweep");
    std::vector<double> values(count);
    check(symeq_parse_sweep(text.c_str(), values.data(), values.size(), &count), "sweep");
    return values;
}

std::vector<int> int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Failure{2, "bad integer list '" + text + "'"};
        }
    }
    return out;
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

std::string partition_text(std::vector<int> counts) {
    std::sort(counts.begin(), counts.end(), std::greater<>());
    std::string out = "<";
    for (size_t i = 0; i < counts.size();) {
        size_t j = i;
        while (j < counts.size() && counts[j] == counts[i]) ++j;
        if (i) out += ' ';
        out += std::to_string(counts[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out + ">";
}

int run_analyze(const std::string& path, bool kv, int d_override) {
    auto code = load(path);
    int n = 0, q = 0;
    size_t size = 0;
    check(symeq_code_shape(code.get(), &n, &q, &size));
    symeq_class cls{};
    check(symeq_code_classify(code.get(), &cls));
    int d = d_override;
    if (d <= 0) {
        if (size >= 2)
            check(symeq_code_min_distance(code.get(), &d));
        else
            d = 0;
    }
    std::vector<int> e_table(static_cast<size_t>(q)), fstar(static_cast<size_t>(q));
    int capability = 0;
    check(symeq_code_profile(code.get(), d > 0 ? d : 1, e_table.data(), &capability));
    for (int e = 1; e <= q; ++e) check(symeq_f_star(n, q, e, &fstar[static_cast<size_t>(e - 1)]));
    std::vector<uint8_t> word(static_cast<size_t>(n));
    check(symeq_code_word(code.get(), 0, word.data()));
    std::vector<int> counts(static_cast<size_t>(q), 0);
    for (auto s : word) ++counts[s];

    std::vector<std::string> classes;
    if (cls.equitable) classes.push_back("equitable");
    if (cls.minimum_symbol_weight) classes.push_back("minimum-symbol-weight");
    if (cls.constant_partition) classes.push_back("constant-partition");
    if (cls.constant_composition) classes.push_back("constant-composition");
    if (cls.fpa) classes.push_back("fpa");
    if (cls.injection) classes.push_back("injection");
    if (cls.permutation) classes.push_back("permutation");
    std::string class_line;
    for (const auto& c : classes) class_line += (class_line.empty() ? "" : " ") + c;
    const std::string cap_text = d <= 0 ? "undefined" : capability ? std::to_string(capability) : "none";

    std::printf("code       %s\n", symeq_code_id(code.get()));
    std::printf("n          %d\nq          %d\nsize       %zu\n", n, q, size);
    std::printf("d          %s\n", d > 0 ? std::to_string(d).c_str() : "undefined");
    std::printf("swt        %d\n", cls.bounded_symbol_weight);
    if (cls.constant_partition) std::printf("partition  %s\n", partition_text(counts).c_str());
    std::printf("classes    %s\n", class_line.empty() ? "-" : class_line.c_str());
    std::printf("\n  e  E(e)  f*(e)\n");
    for (int e = 1; e <= q; ++e)
        std::printf("%3d  %4d  %5d\n", e, e_table[static_cast<size_t>(e - 1)], fstar[static_cast<size_t>(e - 1)]);
    std::printf("\ncapability %s\n", cap_text.c_str());
    if (kv) {
        std::printf("\nid=%s\nn=%d\nq=%d\nsize=%zu\nd=%d\nswt=%d\n", symeq_code_id(code.get()), n, q, size, d,
                    cls.bounded_symbol_weight);
        std::printf("equitable=%d\nminimum_symbol_weight=%d\nconstant_partition=%d\nconstant_composition=%d\n",
                    cls.equitable, cls.minimum_symbol_weight, cls.constant_partition, cls.constant_composition);
        std::printf("fpa=%d\ninjection=%d\npermutation=%d\n", cls.fpa, cls.injection, cls.permutation);
        std::printf("E=%s\nfstar=%s\ncapability=%s\n", join(e_table).c_str(), join(fstar).c_str(), cap_text.c_str());
    }
    return 0;
}

int run_fstar(int n, int q) {
    if (n < 1 || q < 1) throw Failure{2, "--n and --q must be positive"};
    const int r = (n + q - 1) / q;
    std::printf("n=%d q=%d r=%d t=%d\n", n, q, r, q * r - n);
    std::printf("  e  f*(e)\n");
    for (int e = 1; e <= q; ++e) {
        int v = 0;
        check(symeq_f_star(n, q, e, &v));
        std::printf("%3d  %5d\n", e, v);
    }
    return 0;
}

void emit_code(symeq_code* raw, const std::string& out) {
    CodePtr code(raw);
    symeq_text* t = nullptr;
    check(symeq_code_format(code.get(), &t));
    write_output(take(t), out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbol-equity coding toolkit for narrowband-impaired channels"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    uint64_t seed = 1;
    unsigned threads = 1;
    app.add_option("--seed", seed, "Random seed (64-bit unsigned)");
    app.add_option("--threads", threads, "Worker threads for simulations")->check(CLI::Range(1U, 1024U));

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Metrics, capability profile and class of a code file");
    std::string analyze_path;
    bool kv = false;
    int d_override = 0;
    analyze->add_option("code", analyze_path, "Code file")->required()->check(CLI::ExistingFile);
    analyze->add_flag("--kv", kv, "Append a key=value block");
    analyze->add_option("--d", d_override, "Distance to use instead of the computed one");

    // fstar
    auto* fstar = app.add_subcommand("fstar", "Optimal capability growth table");
    int fn = 0, fq = 0;
    fstar->add_option("--n", fn, "Length")->required();
    fstar->add_option("--q", fq, "Alphabet size")->required();

    // construct
    auto* construct = app.add_subcommand("construct", "Build codes");
    construct->require_subcommand(1);
    int cn = 0, cq = 0, cd = 0, cr = 0, ck = 0;
    size_t csize = 0;
    uint64_t budget = 0;
    std::string cout_path, cpartition, row_id, out_dir;
    bool relax = false, list_rows = false, all_rows = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cout_path, "Output file (default stdout)");
        sub->add_option("--budget", budget, "Search budget (0 = default)");
    };
    auto* c_esw = construct->add_subcommand("esw", "Equitable symbol weight code");
    auto* c_msw = construct->add_subcommand("msw", "Constant partition code with the given partition");
    auto* c_inj = construct->add_subcommand("injection", "Injection code with all symbols distinct");
    for (auto* sub : {c_esw, c_msw, c_inj}) {
        sub->add_option("--n", cn, "Length")->required();
        sub->add_option("--q", cq, "Alphabet size")->required();
        sub->add_option("--d", cd, "Minimum distance")->required();
        sub->add_option("--size", csize, "Number of codewords")->required();
        add_common(sub);
    }
    c_msw->add_option("--partition", cpartition, "Comma separated partition, e.g. 2,2,2,1,1")->required();
    c_msw->add_flag("--relax", relax, "Accept constant symbol weight if the partition is out of reach");
    auto* c_rsc = construct->add_subcommand("rsc", "Low symbol weight coset of a Reed-Solomon code");
    auto* c_rss = construct->add_subcommand("rss", "Low symbol weight subcode of a Reed-Solomon code");
    for (auto* sub : {c_rsc, c_rss}) {
        sub->add_option("--q", cq, "Field size (power of two)")->required();
        sub->add_option("--k", ck, "Dimension")->required();
        sub->add_option("--n", cn, "Length (default q-1)");
        sub->add_option("--r", cr, "Symbol weight bound")->required();
        add_common(sub);
    }
    c_rss->add_option("--size", csize, "Number of codewords")->required();
    c_rss->add_option("--d", cd, "Minimum distance required of the base code");
    auto* c_table = construct->add_subcommand("table", "Codes of the comparison tables");
    c_table->add_option("--row", row_id, "Row id");
    c_table->add_flag("--list", list_rows, "List row ids with their parameters");
    c_table->add_flag("--all", all_rows, "Build every row into --out-dir");
    c_table->add_option("--out-dir", out_dir, "Directory for --all");
    add_common(c_table);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Symbol error rate through the simulated channel");
    std::vector<std::string> sim_codes;
    std::string p_sweep = "0.1:0.5:0.1", nb_mode = "on", durations_text, sim_out;
    double Q = 0.05;
    uint64_t trials = 10000;
    bool aligned = false;
    simulate->add_option("codes", sim_codes, "Code files")->required()->check(CLI::ExistingFile);
    simulate->add_option("--p", p_sweep, "Narrowband probability sweep start:stop:step or list");
    simulate->add_option("--Q", Q, "Fading, impulse, insertion and deletion probability");
    simulate->add_option("--trials", trials, "Transmitted codewords per point");
    simulate->add_option("--nb", nb_mode, "Narrowband detection")->check(CLI::IsMember({"on", "off", "both"}));
    simulate->add_option("--durations", durations_text, "Narrowband durations (default b*n, b=1..10)");
    simulate->add_flag("--aligned", aligned, "Start every narrowband event at the first slot");
    simulate->add_option("--out", sim_out, "CSV output (default stdout)");

    // waveform
    auto* waveform = app.add_subcommand("waveform", "Symbol error rate of the MFSK waveform simulation");
    std::vector<std::string> wf_codes;
    std::string esn0 = "0:5:1", wf_nb = "on", wf_out;
    uint64_t wf_trials = 1000;
    waveform->add_option("codes", wf_codes, "Code files")->required()->check(CLI::ExistingFile);
    waveform->add_option("--esn0", esn0, "Es/N0 sweep in dB, start:stop:step or list");
    waveform->add_option("--trials", wf_trials, "Transmitted codewords per point");
    waveform->add_option("--nb", wf_nb, "Narrowband detection")->check(CLI::IsMember({"on", "off"}));
    waveform->add_option("--out", wf_out, "CSV output (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "Exhaustive and adversarial checks");
    verify->require_subcommand(1);
    auto* v_t1 = verify->add_subcommand("theorem1", "Exhaustive decoding check for one error budget");
    std::string t1_code, t1_budget = "0,0,0,0,0";
    uint64_t cap = 100000000;
    v_t1->add_option("code", t1_code, "Code file")->required()->check(CLI::ExistingFile);
    v_t1->add_option("--budget", t1_budget, "e_N,e_F,e_IMP,e_INS,e_DEL");
    v_t1->add_option("--cap", cap, "Maximum decoder runs");
    auto* v_p1 = verify->add_subcommand("prop1", "Witness that the first code corrects what the second cannot");
    std::string p1_better, p1_worse;
    v_p1->add_option("better", p1_better, "Code with the smaller capability profile")->required()->check(CLI::ExistingFile);
    v_p1->add_option("worse", p1_worse, "Code with the larger capability profile")->required()->check(CLI::ExistingFile);
    auto* v_l2 = verify->add_subcommand("lemma2", "Windowed capability equals the longest-window capability");
    std::string l2_code, l2_durations;
    v_l2->add_option("code", l2_code, "Code file")->required()->check(CLI::ExistingFile);
    v_l2->add_option("--durations", l2_durations, "Comma separated durations")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*analyze) return run_analyze(analyze_path, kv, d_override);
        if (*fstar) return run_fstar(fn, fq);

        if (*construct) {
            symeq_code* code = nullptr;
            symeq_build_params params{};
            params.seed = seed;
            params.budget = budget;
            if (*c_esw || *c_inj) {
                params.n = cn;
                params.q = cq;
                params.d_min = cd;
                params.size = csize;
                std::vector<int> part;
                if (*c_inj || cn <= cq) {
                    params.kind = SYMEQ_BUILD_INJECTION;
                } else {
                    const int r = (cn + cq - 1) / cq, t = cq * r - cn;
                    part.assign(static_cast<size_t>(cq - t), r);
                    part.insert(part.end(), static_cast<size_t>(t), r - 1);
                    params.kind = SYMEQ_BUILD_PARTITION;
                    params.partition = part.data();
                    params.partition_len = part.size();
                    params.r = r;
                }
                check(symeq_construct(&params, &code), "construct");
            } else if (*c_msw) {
                auto part = int_list(cpartition);
                params.kind = SYMEQ_BUILD_PARTITION;
                params.n = cn;
                params.q = cq;
                params.d_min = cd;
                params.size = csize;
                params.partition = part.data();
                params.partition_len = part.size();
                params.relax_partition = relax;
                check(symeq_construct(&params, &code), "construct");
            } else if (*c_rsc || *c_rss) {
                params.kind = *c_rsc ? SYMEQ_BUILD_RS_COSET : SYMEQ_BUILD_RS_SUBCODE;
                params.q = cq;
                params.n = cn;
                params.k = ck;
                params.r = cr;
                params.size = *c_rss ? csize : 1;
                params.d_min = cd > 0 ? cd : 1;
                check(symeq_construct(&params, &code), "construct");
            } else {
                if (list_rows) {
                    for (size_t i = 0; i < symeq_table_row_count(); ++i) {
                        const char* id = symeq_table_row_id(i);
                        int n = 0, d = 0, r = 0, q = 0, c = 0;
                        size_t size = 0;
                        check(symeq_table_row_info(id, &n, &d, &r, &q, &size, &c));
                        std::printf("%-16s n=%d d=%d swt=%d q=%d size=%zu capability=%d\n", id, n, d, r, q, size, c);
                    }
                    return 0;
                }
                if (all_rows) {
                    if (out_dir.empty()) throw Failure{2, "--all needs --out-dir"};
                    for (size_t i = 0; i < symeq_table_row_count(); ++i) {
                        const char* id = symeq_table_row_id(i);
                        check(symeq_construct_table_row(id, seed, &code), id);
                        emit_code(code, out_dir + "/" + id + ".code");
                    }
                    return 0;
                }
                if (row_id.empty()) throw Failure{2, "construct table needs --row, --list or --all"};
                check(symeq_construct_table_row(row_id.c_str(), seed, &code), row_id);
            }
            emit_code(code, cout_path);
            return 0;
        }

        if (*simulate) {
            std::vector<CodePtr> owned;
            std::vector<const symeq_code*> codes;
            for (const auto& p : sim_codes) {
                owned.push_back(load(p));
                codes.push_back(owned.back().get());
            }
            auto ps = sweep(p_sweep);
            std::vector<int> modes = nb_mode == "both" ? std::vector<int>{1, 0} : std::vector<int>{nb_mode == "on"};
            std::vector<int> durations = durations_text.empty() ? std::vector<int>{} : int_list(durations_text);
            symeq_channel_params params{};
            params.p = ps.data();
            params.p_count = ps.size();
            params.Q = Q;
            params.durations = durations.empty() ? nullptr : durations.data();
            params.duration_count = durations.size();
            params.aligned_starts = aligned;
            params.nb_modes = modes.data();
            params.nb_mode_count = modes.size();
            params.trials = trials;
            params.seed = seed;
            params.threads = threads;
            symeq_text* csv = nullptr;
            check(symeq_simulate(codes.data(), codes.size(), &params, &csv), "simulate");
            write_output(take(csv), sim_out);
            return 0;
        }

        if (*waveform) {
            std::vector<CodePtr> owned;
            std::vector<const symeq_code*> codes;
            for (const auto& p : wf_codes) {
                owned.push_back(load(p));
                codes.push_back(owned.back().get());
            }
            auto points = sweep(esn0);
            symeq_waveform_params params{};
            params.esn0_db = points.data();
            params.esn0_count = points.size();
            params.nb_detect = wf_nb == "on";
            params.trials = wf_trials;
            params.seed = seed;
            params.threads = threads;
            symeq_text* csv = nullptr;
            check(symeq_waveform(codes.data(), codes.size(), &params, &csv), "waveform");
            write_output(take(csv), wf_out);
            return 0;
        }

        if (*v_t1) {
            auto code = load(t1_code);
            auto budget_values = int_list(t1_budget);
            if (budget_values.size() != 5) throw Failure{2, "--budget needs five comma separated counts"};
            int agrees = 0;
            symeq_text* report = nullptr;
            check(symeq_verify_theorem1(code.get(), budget_values.data(), cap, &agrees, &report), "theorem1");
            std::cout << take(report);
            return agrees ? 0 : 1;
        }
        if (*v_p1) {
            auto better = load(p1_better);
            auto worse = load(p1_worse);
            int certified = 0;
            symeq_text* report = nullptr;
            check(symeq_verify_prop1(better.get(), worse.get(), &certified, &report), "prop1");
            std::cout << take(report);
            return certified ? 0 : 1;
        }
        if (*v_l2) {
            auto code = load(l2_code);
            auto durations = int_list(l2_durations);
            int equal = 0;
            symeq_text* report = nullptr;
            check(symeq_verify_lemma2(code.get(), durations.data(), durations.size(), &equal, &report), "lemma2");
            std::cout << take(report);
            return equal ? 0 : 1;
        }
    } catch (const Failure& f) {
        std::cerr << "symeq: " << f.message << '\n';
        return f.exit_code;
    }
    return 0;
}
