#pragma once

namespace qhd {

// Register size limits. The distance pipeline allocates a statevector of
// 2^(n + kappa + 2) amplitudes, so the arity cap bounds the largest run.
inline constexpr int max_arity = 24;
inline constexpr int max_qubits = 28;

// Stage introspection keeps whole statevectors around; capped separately.
inline constexpr int max_inspect_arity = 12;

// Numerical tolerances: internal invariants are held to 1e-12, user-facing
// equality decisions (zero-vs-nonzero concurrence, category thresholds)
// to 1e-9.
inline constexpr double invariant_tol = 1e-12;
inline constexpr double user_tol = 1e-9;

} // namespace qhd
