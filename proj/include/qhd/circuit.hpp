#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhd/analysis.hpp"
#include "qhd/boolfn.hpp"
#include "qhd/config.hpp"
#include "qhd/errors.hpp"
#include "qhd/simulator.hpp"

namespace qhd {

// Fixed qubit map for the distance pipeline:
//   inputs 0..n-1 | function outputs n..n+kappa-1 | AND target | ancilla
struct CircuitLayout {
    int n = 0;
    int kappa = 0;

    int output_qubit(int j) const { return n + j; }
    int and_target() const { return n + kappa; }
    int conc_ancilla() const { return n + kappa + 1; }
    int total_qubits() const { return n + kappa + 2; }

    std::vector<int> output_qubits() const {
        std::vector<int> q(kappa);
        std::iota(q.begin(), q.end(), n);
        return q;
    }
};

struct Gate {
    enum class Kind { pauli_x, hadamard, cnot, mct, oracle };

    Kind kind;
    std::vector<int> qubits; // controls first, target last
    int oracle_index = -1;   // which function, for Kind::oracle
};

using GateSequence = std::vector<Gate>;

struct GateLogEntry {
    int index = 0;
    std::string name;
    std::vector<int> qubits;
};

// Audit trail of every gate applied, across all preparation passes.
struct GateLog {
    std::vector<GateLogEntry> entries;
    int passes = 0;

    int count_named(const std::string& name) const {
        int c = 0;
        for (const auto& e : entries)
            if (e.name == name) ++c;
        return c;
    }
};

// One line per gate: "<index> <gate-name> <qubits>".
inline std::string format_gate_log(const GateLog& log) {
    std::string out;
    for (const auto& e : log.entries) {
        out += std::to_string(e.index) + " " + e.name;
        for (int q : e.qubits) out += " " + std::to_string(q);
        out += "\n";
    }
    return out;
}

namespace detail {

inline const char* gate_name(Gate::Kind k) {
    switch (k) {
    case Gate::Kind::pauli_x: return "x";
    case Gate::Kind::hadamard: return "h";
    case Gate::Kind::cnot: return "cnot";
    case Gate::Kind::mct: return "mct";
    default: return "oracle";
    }
}

inline void log_gate(GateLog* log, const Gate& g) {
    if (!log) return;
    std::string name = gate_name(g.kind);
    if (g.kind == Gate::Kind::oracle) name += std::to_string(g.oracle_index);
    log->entries.push_back({static_cast<int>(log->entries.size()), std::move(name), g.qubits});
}

inline CircuitLayout layout_for(std::span<const BooleanFunction> funcs) {
    if (funcs.size() < 2)
        throw input_error("at least 2 functions are required, got " +
                          std::to_string(funcs.size()));
    require_shared_arity(funcs, "circuit");
    CircuitLayout lo{funcs.front().arity(), static_cast<int>(funcs.size())};
    if (lo.total_qubits() > max_qubits)
        throw resource_error("register of " + std::to_string(lo.total_qubits()) +
                             " qubits exceeds the cap of " + std::to_string(max_qubits));
    return lo;
}

} // namespace detail

inline void apply_gate(StateVector& state, const Gate& g, std::span<const BooleanFunction> funcs,
                       GateLog* log = nullptr) {
    switch (g.kind) {
    case Gate::Kind::pauli_x: apply_x(state, g.qubits.at(0)); break;
    case Gate::Kind::hadamard: apply_hadamard(state, g.qubits.at(0)); break;
    case Gate::Kind::cnot: apply_cnot(state, g.qubits.at(0), g.qubits.at(1)); break;
    case Gate::Kind::mct: {
        std::span<const int> controls(g.qubits.data(), g.qubits.size() - 1);
        apply_mct(state, controls, g.qubits.back());
        break;
    }
    case Gate::Kind::oracle:
        apply_oracle(state, funcs[static_cast<std::size_t>(g.oracle_index)], g.qubits.back());
        break;
    }
    detail::log_gate(log, g);
}

inline void apply_sequence(StateVector& state, const GateSequence& seq,
                           std::span<const BooleanFunction> funcs, GateLog* log = nullptr) {
    for (const Gate& g : seq) apply_gate(state, g, funcs, log);
}

// The composite black-box: one oracle per function marking its solutions on
// its own output qubit, then a kappa-control Toffoli writing the joint AND
// onto the target. Qubit indices follow CircuitLayout.
inline GateSequence build_u_kappa(std::span<const BooleanFunction> funcs) {
    const CircuitLayout lo = detail::layout_for(funcs);
    GateSequence seq;
    for (int j = 0; j < lo.kappa; ++j) {
        Gate g{Gate::Kind::oracle, {}, j};
        for (int q = 0; q < lo.n; ++q) g.qubits.push_back(q);
        g.qubits.push_back(lo.output_qubit(j));
        seq.push_back(std::move(g));
    }
    Gate t{Gate::Kind::mct, lo.output_qubits(), -1};
    t.qubits.push_back(lo.and_target());
    seq.push_back(std::move(t));
    return seq;
}

namespace detail {

// One full preparation pass on the complete register: ancilla to |1>,
// Hadamard wall on the inputs, then the composite black-box.
inline StateVector prepare_marked_state(std::span<const BooleanFunction> funcs,
                                        const CircuitLayout& lo, GateLog* log) {
    if (log) ++log->passes;
    StateVector state = zero_state(lo.total_qubits());
    apply_gate(state, Gate{Gate::Kind::pauli_x, {lo.conc_ancilla()}, -1}, funcs, log);
    for (int q = 0; q < lo.n; ++q)
        apply_gate(state, Gate{Gate::Kind::hadamard, {q}, -1}, funcs, log);
    apply_sequence(state, build_u_kappa(funcs), funcs, log);
    return state;
}

inline int measure_delta(const StateVector& state, int qubit, RunMode mode, std::uint64_t shots,
                         std::uint64_t seed) {
    if (mode == RunMode::exact) return probability_one(state, qubit) > 0.5 ? 1 : 0;
    const int qs[1] = {qubit};
    auto hist = sample(state, qs, shots, seed);
    const std::uint64_t ones = hist.count(1) ? hist.at(1) : 0;
    return 2 * ones >= shots ? 1 : 0; // majority vote
}

} // namespace detail

// Exact statevector after a preparation stage, without the concurrence
// ancilla (n + kappa + 1 qubits). For two functions the stages 0..4 are the
// zero state, the uniform superposition, the two oracle marks and the
// jointly marked state.
inline StateVector state_after_stage(std::span<const BooleanFunction> funcs, int stage) {
    const CircuitLayout lo = detail::layout_for(funcs);
    if (lo.n > max_inspect_arity)
        throw resource_error("stage introspection is limited to arity <= " +
                             std::to_string(max_inspect_arity));
    if (stage < 0 || stage > lo.kappa + 2)
        throw input_error("unknown stage " + std::to_string(stage) + "; valid stages are 0.." +
                          std::to_string(lo.kappa + 2));
    StateVector state = zero_state(lo.total_qubits() - 1);
    if (stage >= 1) apply_hadamard_range(state, lo.n);
    const GateSequence u_kappa = build_u_kappa(funcs);
    for (int j = 0; j < stage - 1 && j < lo.kappa; ++j)
        apply_gate(state, u_kappa[static_cast<std::size_t>(j)], funcs);
    if (stage == lo.kappa + 2) apply_gate(state, u_kappa.back(), funcs);
    return state;
}

// Stage names for introspection: "phi0".."phi<kappa+2>".
inline int parse_stage(std::string_view name, int kappa) {
    if (name.rfind("phi", 0) == 0) {
        int v = -1;
        auto body = name.substr(3);
        auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
        if (ec == std::errc{} && p == body.data() + body.size() && v >= 0 && v <= kappa + 2)
            return v;
    }
    throw input_error("unknown stage '" + std::string(name) + "'; valid stages are phi0..phi" +
                      std::to_string(kappa + 2));
}

// Concurrence measurement: a CNOT from the marked qubit onto an ancilla
// prepared in |1>, then entanglement readout. Exact mode reads C from the
// reduced density of the ancilla; sampled mode estimates it from shots on
// the marked qubit as 2 sqrt(p(1-p)).
inline ConcurrenceReading apply_u_lambda(StateVector& state, int marked_qubit, int ancilla_qubit,
                                         RunMode mode = RunMode::exact, std::uint64_t shots = 4096,
                                         std::uint64_t seed = 0, GateLog* log = nullptr) {
    if (std::abs(probability_one(state, ancilla_qubit) - 1.0) > user_tol)
        throw protocol_error("apply_u_lambda: ancilla qubit " + std::to_string(ancilla_qubit) +
                             " is not in |1>");
    apply_gate(state, Gate{Gate::Kind::cnot, {marked_qubit, ancilla_qubit}, -1}, {}, log);
    ConcurrenceReading r;
    r.mode = mode;
    if (mode == RunMode::exact) {
        r.C = concurrence_vs_rest(state, ancilla_qubit);
        r.p1 = probability_one(state, marked_qubit);
        return r;
    }
    if (shots < 1) throw input_error("apply_u_lambda: shots must be >= 1 in sampled mode");
    const int qs[1] = {marked_qubit};
    auto hist = sample(state, qs, shots, seed);
    const std::uint64_t ones = hist.count(1) ? hist.at(1) : 0;
    const double p = static_cast<double>(ones) / static_cast<double>(shots);
    r.p1 = p;
    r.C = 2.0 * std::sqrt(p * (1.0 - p));
    r.stderr_c = std::abs(1.0 - 2.0 * p) / std::sqrt(static_cast<double>(shots));
    r.shots = shots;
    return r;
}

// The distance pipeline. One preparation pass (Hadamard wall, the composite
// black-box, the concurrence operator) decides everything when C != 0; the
// C = 0 case re-prepares without the concurrence operator and measures the
// AND target directly (delta). Each oracle is applied exactly once per pass.
inline HammingReport run_proposed_algorithm(std::span<const BooleanFunction> funcs,
                                            RunMode mode = RunMode::exact,
                                            std::uint64_t shots = 4096, std::uint64_t seed = 0,
                                            GateLog* log = nullptr, bool with_classical = true) {
    const CircuitLayout lo = detail::layout_for(funcs);
    if (mode == RunMode::sampled && shots < 1)
        throw input_error("run_proposed_algorithm: shots must be >= 1 in sampled mode");

    StateVector state = detail::prepare_marked_state(funcs, lo, log);
    const ConcurrenceReading reading =
        apply_u_lambda(state, lo.and_target(), lo.conc_ancilla(), mode, shots, seed, log);

    std::optional<int> delta;
    if (!concurrence_is_nonzero(reading)) {
        // Distinct seed stream for the delta shots.
        StateVector rerun = detail::prepare_marked_state(funcs, lo, log);
        delta = detail::measure_delta(rerun, lo.and_target(), mode, shots, seed + 1);
    }

    const HammingCore core = decide_hamming(reading, delta, funcs.front().size());

    HammingReport report;
    report.n = lo.n;
    report.kappa = lo.kappa;
    report.N = funcs.front().size();
    report.hamming = core.hamming;
    report.common_ones = core.common_ones;
    report.reading = reading;
    report.delta = delta;
    report.tag = core.tag;
    if (with_classical) compare_with_classical(funcs, report);
    return report;
}

struct CategorizationResult {
    Category category = Category::other;
    ConcurrenceReading reading;
};

// Categorization pipeline on n + 2 qubits: Hadamard wall, the function's
// oracle on qubit n, a second wall (after which the register amplitudes are
// the function's Walsh coefficients), then the concurrence operator on the
// last two qubits.
inline CategorizationResult run_categorization(const BooleanFunction& f,
                                               RunMode mode = RunMode::exact,
                                               std::uint64_t shots = 4096, std::uint64_t seed = 0,
                                               GateLog* log = nullptr) {
    const int n = f.arity();
    const int target = n;
    const int ancilla = n + 1;
    const BooleanFunction funcs[1] = {f};
    if (log) ++log->passes;

    StateVector state = zero_state(n + 2);
    apply_gate(state, Gate{Gate::Kind::pauli_x, {ancilla}, -1}, funcs, log);
    for (int q = 0; q < n; ++q) apply_gate(state, Gate{Gate::Kind::hadamard, {q}, -1}, funcs, log);
    Gate oracle{Gate::Kind::oracle, {}, 0};
    for (int q = 0; q < n; ++q) oracle.qubits.push_back(q);
    oracle.qubits.push_back(target);
    apply_gate(state, oracle, funcs, log);
    for (int q = 0; q < n; ++q) apply_gate(state, Gate{Gate::Kind::hadamard, {q}, -1}, funcs, log);

    CategorizationResult result;
    result.reading = apply_u_lambda(state, target, ancilla, mode, shots, seed, log);
    result.category = mode == RunMode::exact ? categorize_from_concurrence(result.reading.C)
                                             : categorize_from_concurrence(result.reading);
    return result;
}

} // namespace qhd
