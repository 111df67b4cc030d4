#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhd/boolfn.hpp"
#include "qhd/config.hpp"
#include "qhd/errors.hpp"

namespace qhd {

using cx = std::complex<double>;

// Full complex amplitude vector over 2^q basis states. Qubit 0 is the
// least significant bit of the basis index.
struct StateVector {
    int num_qubits = 0;
    std::vector<cx> amps;

    std::uint64_t dim() const { return std::uint64_t{1} << num_qubits; }
};

namespace detail {

inline void check_qubit(const StateVector& s, int q, const char* op) {
    if (q < 0 || q >= s.num_qubits)
        throw input_error(std::string(op) + ": qubit " + std::to_string(q) +
                          " out of range for " + std::to_string(s.num_qubits) + " qubits");
}

} // namespace detail

inline StateVector zero_state(int q) {
    if (q < 1 || q > max_qubits)
        throw resource_error("register of " + std::to_string(q) + " qubits exceeds the cap of " +
                             std::to_string(max_qubits));
    StateVector s;
    s.num_qubits = q;
    s.amps.assign(std::uint64_t{1} << q, cx{0.0, 0.0});
    s.amps[0] = cx{1.0, 0.0};
    return s;
}

inline void apply_x(StateVector& s, int qubit) {
    detail::check_qubit(s, qubit, "apply_x");
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    for (std::uint64_t i = 0; i < s.dim(); ++i)
        if (!(i & mask)) std::swap(s.amps[i], s.amps[i | mask]);
}

inline void apply_hadamard(StateVector& s, int qubit) {
    detail::check_qubit(s, qubit, "apply_hadamard");
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::uint64_t half = std::uint64_t{1} << qubit;
    const std::uint64_t stride = half << 1;
    for (std::uint64_t base = 0; base < s.dim(); base += stride)
        for (std::uint64_t i = base; i < base + half; ++i) {
            const cx a = s.amps[i];
            const cx b = s.amps[i + half];
            s.amps[i] = (a + b) * inv_sqrt2;
            s.amps[i + half] = (a - b) * inv_sqrt2;
        }
}

// Hadamard wall on qubits 0 .. count-1.
inline void apply_hadamard_range(StateVector& s, int count) {
    if (count < 0 || count > s.num_qubits)
        throw input_error("apply_hadamard_range: count " + std::to_string(count) +
                          " out of range for " + std::to_string(s.num_qubits) + " qubits");
    for (int q = 0; q < count; ++q) apply_hadamard(s, q);
}

inline void apply_cnot(StateVector& s, int control, int target) {
    detail::check_qubit(s, control, "apply_cnot");
    detail::check_qubit(s, target, "apply_cnot");
    if (control == target) throw input_error("apply_cnot: control equals target");
    const std::uint64_t cm = std::uint64_t{1} << control;
    const std::uint64_t tm = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < s.dim(); ++i)
        if ((i & cm) && !(i & tm)) std::swap(s.amps[i], s.amps[i | tm]);
}

// Multi-controlled Toffoli: flips the target bit on basis states where
// every control bit is 1. A pure permutation of basis amplitudes.
inline void apply_mct(StateVector& s, std::span<const int> controls, int target) {
    if (controls.empty()) throw input_error("apply_mct: no control qubits");
    detail::check_qubit(s, target, "apply_mct");
    std::uint64_t cmask = 0;
    for (int c : controls) {
        detail::check_qubit(s, c, "apply_mct");
        if (c == target) throw input_error("apply_mct: control overlaps target");
        const std::uint64_t bit = std::uint64_t{1} << c;
        if (cmask & bit) throw input_error("apply_mct: duplicate control qubit");
        cmask |= bit;
    }
    const std::uint64_t tm = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < s.dim(); ++i)
        if ((i & cmask) == cmask && !(i & tm)) std::swap(s.amps[i], s.amps[i | tm]);
}

// Black-box for f: |x, ..., b, ...> -> |x, ..., b ^ f(x), ...> with the
// controls fixed as qubits 0..n-1 and the target outside that range.
// Implemented as a table-driven conditional swap, never a dense matrix.
inline void apply_oracle(StateVector& s, const BooleanFunction& f, int target) {
    const int n = f.arity();
    if (n >= s.num_qubits)
        throw input_error("apply_oracle: function arity " + std::to_string(n) +
                          " leaves no target qubit in a " + std::to_string(s.num_qubits) +
                          "-qubit register");
    detail::check_qubit(s, target, "apply_oracle");
    if (target < n)
        throw input_error("apply_oracle: target qubit " + std::to_string(target) +
                          " lies inside the control range 0.." + std::to_string(n - 1));
    const std::uint64_t tm = std::uint64_t{1} << target;
    const std::uint64_t xmask = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t i = 0; i < s.dim(); ++i)
        if (!(i & tm) && f(i & xmask)) std::swap(s.amps[i], s.amps[i | tm]);
}

inline double total_probability(const StateVector& s) {
    double t = 0.0;
    for (const cx& a : s.amps) t += std::norm(a);
    return t;
}

inline double probability_one(const StateVector& s, int qubit) {
    detail::check_qubit(s, qubit, "probability_one");
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    double p = 0.0;
    for (std::uint64_t i = 0; i < s.dim(); ++i)
        if (i & mask) p += std::norm(s.amps[i]);
    return p;
}

// Reduced density matrix of one qubit against the rest. Hermitian with
// unit trace; rho10 is the conjugate of rho01.
struct SingleQubitDensity {
    double rho00 = 0.0;
    double rho11 = 0.0;
    cx rho01{0.0, 0.0};

    double trace() const { return rho00 + rho11; }
    double determinant() const { return rho00 * rho11 - std::norm(rho01); }
};

inline SingleQubitDensity reduced_density(const StateVector& s, int qubit) {
    detail::check_qubit(s, qubit, "reduced_density");
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    SingleQubitDensity d;
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        if (i & mask) continue;
        const cx a0 = s.amps[i];
        const cx a1 = s.amps[i | mask];
        d.rho00 += std::norm(a0);
        d.rho11 += std::norm(a1);
        d.rho01 += a0 * std::conj(a1);
    }
    return d;
}

// Concurrence of one qubit against the rest of a pure state,
// C = 2 sqrt(det rho). The determinant is clamped at zero to absorb
// -1e-16-scale round-off on separable states.
inline double concurrence_vs_rest(const StateVector& s, int qubit) {
    const double det = reduced_density(s, qubit).determinant();
    return 2.0 * std::sqrt(std::max(0.0, det));
}

namespace detail {

// Uniform double in [0, 1) from the top 53 bits of the generator output;
// pinned so that sampling is bit-identical across platforms.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

} // namespace detail

// Draws `shots` outcomes from the exact marginal distribution of the listed
// qubits. Outcome bit j corresponds to qubits[j]. Deterministic for a given
// seed; returns only outcomes with a nonzero count.
inline std::map<std::uint64_t, std::uint64_t> sample(const StateVector& s,
                                                     std::span<const int> qubits,
                                                     std::uint64_t shots, std::uint64_t seed) {
    if (qubits.empty()) throw input_error("sample: no qubits listed");
    if (shots < 1) throw input_error("sample: shots must be >= 1");
    std::uint64_t seen = 0;
    for (int q : qubits) {
        detail::check_qubit(s, q, "sample");
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (seen & bit) throw input_error("sample: duplicate qubit in list");
        seen |= bit;
    }

    std::vector<double> prob(std::uint64_t{1} << qubits.size(), 0.0);
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        std::uint64_t outcome = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j)
            outcome |= ((i >> qubits[j]) & 1) << j;
        prob[outcome] += std::norm(s.amps[i]);
    }
    std::vector<double> cdf(prob.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < prob.size(); ++k) {
        acc += prob[k];
        cdf[k] = acc;
    }

    std::mt19937_64 eng(seed);
    std::map<std::uint64_t, std::uint64_t> hist;
    for (std::uint64_t t = 0; t < shots; ++t) {
        const double u = detail::uniform01(eng) * acc;
        std::size_t lo = 0, hi = cdf.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cdf[mid] > u)
                hi = mid;
            else
                lo = mid + 1;
        }
        ++hist[lo];
    }
    return hist;
}

} // namespace qhd
