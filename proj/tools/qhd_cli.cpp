// Command-line front end: reads Boolean functions as expressions or
// truth-table files, runs the distance and categorization pipelines, dumps
// intermediate states and benchmarks the gate kernels.
//
// Exit codes: 0 success, 2 bad input or resource cap, 3 inconsistent
// measurement, 1 anything else.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qhd/qhd.hpp"
#include "qhd/report_json.hpp"

namespace {

struct CommonOptions {
    std::vector<std::string> specs;
    int n = 0; // 0 = not given; required for expr: specs
    std::string mode = "exact";
    std::uint64_t shots = 4096;
    std::uint64_t seed = 0;
    std::string output = "json";
    std::string gate_log_path;
    bool no_classical = false;
};

void add_run_options(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--n", opt.n, "arity of expression specs (required for expr:)");
    cmd->add_option("--mode", opt.mode, "exact or sampled")
        ->check(CLI::IsMember({"exact", "sampled"}));
    cmd->add_option("--shots", opt.shots, "shots per measurement in sampled mode");
    cmd->add_option("--seed", opt.seed, "random seed for sampled mode");
    cmd->add_option("--output", opt.output, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--gate-log", opt.gate_log_path, "write the gate log to this file");
}

qhd::BooleanFunction parse_spec(const std::string& spec, int n) {
    if (spec.rfind("expr:", 0) == 0) {
        if (n < 1)
            throw qhd::input_error("spec '" + spec +
                                   "': expression specs need an explicit --n (the arity is not "
                                   "inferable from the variables used)");
        return qhd::parse_expression(spec.substr(5), n);
    }
    if (spec.rfind("file:", 0) == 0) {
        auto f = qhd::load_truth_table(spec.substr(5));
        if (n > 0 && f.arity() != n)
            throw qhd::input_error("spec '" + spec + "': file arity " +
                                   std::to_string(f.arity()) + " contradicts --n " +
                                   std::to_string(n));
        return f;
    }
    throw qhd::input_error("spec '" + spec + "' must start with expr: or file:");
}

std::vector<qhd::BooleanFunction> parse_specs(const std::vector<std::string>& specs, int n) {
    std::vector<qhd::BooleanFunction> fs;
    fs.reserve(specs.size());
    for (const auto& s : specs) fs.push_back(parse_spec(s, n));
    return fs;
}

void write_gate_log(const std::string& path, const qhd::GateLog& log) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw qhd::input_error("cannot open gate log file '" + path + "'");
    out << qhd::format_gate_log(log);
}

void print_hamming_text(const qhd::HammingReport& r) {
    std::cout << "n=" << r.n << " kappa=" << r.kappa << " N=" << r.N << "\n";
    std::cout << "H=" << r.hamming << "\n";
    std::cout << "M_c=" << r.common_ones << "\n";
    std::cout << "C=" << r.reading.C << "\n";
    std::cout << "p1=" << r.reading.p1 << "\n";
    std::cout << "case=" << qhd::to_string(r.tag) << "\n";
    std::cout << "mode=" << qhd::to_string(r.reading.mode);
    if (r.reading.mode == qhd::RunMode::sampled)
        std::cout << " shots=" << r.reading.shots << " stderr_C=" << r.reading.stderr_c;
    std::cout << "\n";
    if (r.delta) std::cout << "delta=" << *r.delta << "\n";
    if (r.classical_joint) std::cout << "classical_joint=" << *r.classical_joint << "\n";
    if (r.classical_textbook) std::cout << "classical_textbook=" << *r.classical_textbook << "\n";
    if (r.agrees_with_classical)
        std::cout << "agrees_with_classical=" << (*r.agrees_with_classical ? "yes" : "no") << "\n";
    for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
}

int run_hamming(const CommonOptions& opt) {
    auto fs = parse_specs(opt.specs, opt.n);
    const auto mode = qhd::run_mode_from_string(opt.mode);
    qhd::GateLog log;
    auto report =
        qhd::run_proposed_algorithm(fs, mode, opt.shots, opt.seed, &log, !opt.no_classical);
    write_gate_log(opt.gate_log_path, log);
    if (opt.output == "json")
        std::cout << qhd::report_to_json(report).dump(2) << "\n";
    else
        print_hamming_text(report);
    return 0;
}

int run_categorize(const CommonOptions& opt) {
    auto fs = parse_specs(opt.specs, opt.n);
    if (fs.size() != 1)
        throw qhd::input_error("categorize takes exactly one function spec, got " +
                               std::to_string(fs.size()));
    const auto mode = qhd::run_mode_from_string(opt.mode);
    qhd::GateLog log;
    auto res = qhd::run_categorization(fs.front(), mode, opt.shots, opt.seed, &log);
    write_gate_log(opt.gate_log_path, log);
    if (opt.output == "json") {
        nlohmann::json j;
        j["n"] = fs.front().arity();
        j["category"] = qhd::to_string(res.category);
        j["C"] = res.reading.C;
        j["p1"] = res.reading.p1;
        j["mode"] = qhd::to_string(res.reading.mode);
        j["shots"] = res.reading.shots;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "category=" << qhd::to_string(res.category) << "\n";
        std::cout << "C=" << res.reading.C << "\n";
    }
    return 0;
}

std::string bits_of(std::uint64_t value, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int b = 0; b < width; ++b)
        if ((value >> b) & 1) s[static_cast<std::size_t>(width - 1 - b)] = '1';
    return s;
}

int run_inspect(const CommonOptions& opt, const std::string& stage_name) {
    auto fs = parse_specs(opt.specs, opt.n);
    if (fs.size() < 2)
        throw qhd::input_error("inspect takes at least two function specs, got " +
                               std::to_string(fs.size()));
    const int kappa = static_cast<int>(fs.size());
    const int stage = qhd::parse_stage(stage_name, kappa);
    const auto state = qhd::state_after_stage(fs, stage);
    const int n = fs.front().arity();
    const std::uint64_t in_mask = (std::uint64_t{1} << n) - 1;
    std::cout.precision(15); // hides the 1-ulp butterfly round-off

    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        const auto a = state.amps[i];
        if (std::abs(a) <= 1e-12) continue;
        std::cout << "input=" << bits_of(i & in_mask, n)
                  << " outputs=" << bits_of((i >> n) & ((std::uint64_t{1} << kappa) - 1), kappa)
                  << " chi=" << ((i >> (n + kappa)) & 1) << " amp=" << a.real();
        if (std::abs(a.imag()) > 1e-15) std::cout << (a.imag() < 0 ? "" : "+") << a.imag() << "i";
        std::cout << "\n";
    }
    return 0;
}

int run_bench(int n_min, int n_max, int kappa, int reps) {
    if (n_min < 1 || n_max < n_min)
        throw qhd::input_error("bench needs 1 <= n-min <= n-max, got " + std::to_string(n_min) +
                               ".." + std::to_string(n_max));
    if (reps < 1) throw qhd::input_error("bench needs at least one repetition");
    std::cout.precision(6);
    for (int n = n_min; n <= n_max; ++n) {
        std::vector<qhd::BooleanFunction> fs;
        for (int j = 0; j < kappa; ++j)
            fs.push_back(qhd::random_function(n, static_cast<std::uint64_t>(n) * 31 + j));
        qhd::GateLog log;
        const auto t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r)
            qhd::run_proposed_algorithm(fs, qhd::RunMode::exact, 1, 0, &log, false);
        const auto t1 = std::chrono::steady_clock::now();
        const double total = std::chrono::duration<double>(t1 - t0).count();
        const double per_run = total / reps;
        const double dim = std::pow(2.0, n + kappa + 2);
        // every logged gate sweeps the full amplitude vector once
        const double amps_per_sec =
            total > 0.0 ? static_cast<double>(log.entries.size()) * dim / total : 0.0;
        std::cout << n << "," << kappa << "," << per_run << "," << amps_per_sec << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamming distance between Boolean black-boxes via a simulated "
                 "entanglement measurement"};
    app.require_subcommand(1);

    CommonOptions ham_opt;
    auto* ham = app.add_subcommand(
        "hamming", "distance between two or more functions (expr:<text> or file:<path>)");
    ham->add_option("specs", ham_opt.specs, "function specs")->required()->expected(-2);
    add_run_options(ham, ham_opt);
    ham->add_flag("--no-classical", ham_opt.no_classical, "skip the brute-force cross-check");

    CommonOptions cat_opt;
    auto* cat = app.add_subcommand("categorize",
                                   "classify one function as constant, balanced or other");
    cat->add_option("spec", cat_opt.specs, "function spec")->required()->expected(1);
    add_run_options(cat, cat_opt);

    CommonOptions ins_opt;
    std::string stage_name;
    auto* ins = app.add_subcommand("inspect", "dump the state after a preparation stage");
    ins->add_option("specs", ins_opt.specs, "function specs")->required()->expected(-2);
    ins->add_option("--stage", stage_name, "phi0..phi<kappa+2>")->required();
    ins->add_option("--n", ins_opt.n, "arity of expression specs");

    int bench_n_min = 10, bench_n_max = 16, bench_kappa = 2, bench_reps = 3;
    auto* ben = app.add_subcommand("bench", "time the exact pipeline, one CSV row per arity");
    ben->add_option("--n-min", bench_n_min, "smallest arity");
    ben->add_option("--n-max", bench_n_max, "largest arity");
    ben->add_option("--kappa", bench_kappa, "number of functions")->check(CLI::Range(2, 26));
    ben->add_option("--reps", bench_reps, "repetitions per row");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (ham->parsed()) return run_hamming(ham_opt);
        if (cat->parsed()) return run_categorize(cat_opt);
        if (ins->parsed()) return run_inspect(ins_opt, stage_name);
        return run_bench(bench_n_min, bench_n_max, bench_kappa, bench_reps);
    } catch (const qhd::inconsistency_error& e) {
        std::cerr << "inconsistent measurement: " << e.what() << "\n";
        return 3;
    } catch (const qhd::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qhd::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
