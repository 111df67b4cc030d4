#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhd/boolfn.hpp"
#include "qhd/config.hpp"
#include "qhd/errors.hpp"

namespace qhd {

enum class RunMode { exact, sampled };

// A concurrence measurement: C together with the probability p1 that the
// marked qubit reads 1 (needed to pick the right root when inverting C),
// plus the sampling metadata. In exact mode shots and stderr_c are zero.
struct ConcurrenceReading {
    double C = 0.0;
    double p1 = 0.0;
    RunMode mode = RunMode::exact;
    std::uint64_t shots = 0;
    double stderr_c = 0.0; // standard error of C, 0 in exact mode
};

enum class CaseTag { entangled, all_disagree, all_agree };

enum class Category { constant, balanced, other };

inline const char* to_string(CaseTag t) {
    switch (t) {
    case CaseTag::entangled: return "entangled";
    case CaseTag::all_disagree: return "all_disagree";
    default: return "all_agree";
    }
}

inline const char* to_string(Category c) {
    switch (c) {
    case Category::constant: return "constant";
    case Category::balanced: return "balanced";
    default: return "other";
    }
}

inline const char* to_string(RunMode m) { return m == RunMode::exact ? "exact" : "sampled"; }

// Verdict of the distance pipeline plus the classical cross-checks.
struct HammingReport {
    int n = 0;
    int kappa = 0;
    std::uint64_t N = 0;
    std::uint64_t hamming = 0;     // H = N - common_ones
    std::uint64_t common_ones = 0; // M_c
    ConcurrenceReading reading;
    std::optional<int> delta; // taken only in the C = 0 branch
    CaseTag tag = CaseTag::entangled;
    std::optional<std::uint64_t> classical_joint;
    std::optional<std::uint64_t> classical_textbook;
    std::optional<bool> agrees_with_classical; // hamming == N - classical_joint
    std::vector<std::string> warnings;
};

// Zero-vs-nonzero decision for a concurrence reading: a fixed tolerance in
// exact mode, three propagated standard errors in sampled mode.
inline bool concurrence_is_nonzero(const ConcurrenceReading& r) {
    if (r.mode == RunMode::exact) return r.C > user_tol;
    return r.C > 3.0 * r.stderr_c;
}

namespace detail {

inline std::uint64_t solve_mc_impl(double C, double p1, std::uint64_t N, double mc_tolerance) {
    if (!(C >= 0.0) || C > 1.0 + invariant_tol)
        throw input_error("solve_mc: concurrence " + std::to_string(C) + " outside [0, 1]");
    if (C > 1.0) C = 1.0;
    const double disc = std::sqrt(std::max(0.0, 1.0 - C * C));
    const double half_n = static_cast<double>(N) / 2.0;
    const double root = p1 >= 0.5 ? half_n * (1.0 + disc) : half_n * (1.0 - disc);
    double rounded = std::round(root);
    if (rounded < 0.0) rounded = 0.0;
    if (rounded > static_cast<double>(N)) rounded = static_cast<double>(N);
    if (std::abs(root - rounded) > mc_tolerance)
        throw inconsistency_error("solve_mc: root " + std::to_string(root) +
                                  " is not within tolerance " + std::to_string(mc_tolerance) +
                                  " of an integer solution count");
    return static_cast<std::uint64_t>(rounded);
}

} // namespace detail

// Inverts C = 2 sqrt(M_c (N - M_c)) / N. The quadratic has the two roots
// N (1 +- sqrt(1 - C^2)) / 2, symmetric about N/2; p1 = M_c / N from the
// same state picks the physical one. Exact-mode tolerance.
inline std::uint64_t solve_mc(double C, double p1, std::uint64_t N) {
    return detail::solve_mc_impl(C, p1, N, 1e-6 * static_cast<double>(N));
}

// Mode-aware overload: in sampled mode the rounding tolerance is three
// standard errors of M_c, propagated from stderr(C) through the root.
inline std::uint64_t solve_mc(const ConcurrenceReading& r, std::uint64_t N) {
    if (r.mode == RunMode::exact) return solve_mc(r.C, r.p1, N);
    const double disc = std::sqrt(std::max(0.0, 1.0 - r.C * r.C));
    double tol = static_cast<double>(N); // coalesced roots: any reading maps to N/2
    if (disc > 0.0) tol = 3.0 * r.stderr_c * static_cast<double>(N) * r.C / (2.0 * disc);
    return detail::solve_mc_impl(r.C, r.p1, N, tol);
}

struct HammingCore {
    std::uint64_t hamming = 0;
    std::uint64_t common_ones = 0;
    CaseTag tag = CaseTag::entangled;
};

// Case analysis on the measured concurrence. Nonzero C inverts to M_c and
// H = N - M_c. Zero C needs the delta bit from the re-run to split
// M_c = 0 (all inputs fail some function, H = N) from M_c = N (H = 0).
inline HammingCore decide_hamming(const ConcurrenceReading& reading, std::optional<int> delta,
                                  std::uint64_t N) {
    if (concurrence_is_nonzero(reading)) {
        const std::uint64_t mc = solve_mc(reading, N);
        if (mc == 0 || mc == N)
            throw inconsistency_error("decide_hamming: nonzero concurrence is incompatible with "
                                      "M_c = " +
                                      std::to_string(mc));
        return {N - mc, mc, CaseTag::entangled};
    }
    if (!delta)
        throw protocol_error("decide_hamming: concurrence is below threshold but no delta "
                             "measurement was provided");
    if (*delta == 0) return {N, 0, CaseTag::all_disagree};
    return {0, N, CaseTag::all_agree};
}

// C = 0 only for constant functions and C = 1 only for balanced ones
// (the formula C = 2 sqrt(M (N - M)) / N forces C = 1 at M = N/2).
inline Category categorize_from_concurrence(double C) {
    if (C <= user_tol) return Category::constant;
    if (std::abs(C - 1.0) <= user_tol) return Category::balanced;
    return Category::other;
}

inline Category categorize_from_concurrence(const ConcurrenceReading& r) {
    if (r.mode == RunMode::exact) return categorize_from_concurrence(r.C);
    const double tol = 3.0 * r.stderr_c;
    if (r.C <= tol) return Category::constant;
    if (std::abs(r.C - 1.0) <= tol) return Category::balanced;
    return Category::other;
}

// Fills the brute-force cross-checks. The reported H counts every input
// that fails to satisfy all functions jointly, which is not the textbook
// disagreement count whenever some input maps every function to 0; a
// mismatch is surfaced as a warning, never an error.
inline HammingReport& compare_with_classical(std::span<const BooleanFunction> funcs,
                                             HammingReport& report) {
    report.classical_joint = classical_joint_ones(funcs);
    report.classical_textbook = classical_hamming_textbook(funcs);
    report.agrees_with_classical = (report.hamming == report.N - *report.classical_joint);
    if (report.hamming != *report.classical_textbook)
        report.warnings.push_back(
            "H=" + std::to_string(report.hamming) +
            " counts inputs that do not jointly satisfy all functions; the textbook count of "
            "disagreeing inputs is " +
            std::to_string(*report.classical_textbook));
    return report;
}

} // namespace qhd
