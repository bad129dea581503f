#pragma once

// Numeric tolerances shared across the library.  Equality-style checks
// default to 1e-10, normalization checks to 1e-12; operations that accept a
// tolerance parameter use these as defaults.

namespace ebit::tol {

inline constexpr double norm = 1e-12;            // state normalization
inline constexpr double equality = 1e-10;        // generic equality checks
inline constexpr double hermitian = 1e-12;       // density-operator Hermiticity
inline constexpr double trace = 1e-12;           // density-operator trace
inline constexpr double psd_floor = -1e-10;      // smallest admissible eigenvalue
inline constexpr double schmidt_rank = 1e-10;    // coefficient -> rank cutoff
inline constexpr double prob_floor = -1e-12;     // probability nonnegativity slack
inline constexpr double prob_sum = 1e-9;         // probability-vector normalization
inline constexpr double unitary = 1e-10;         // U^dag U = I
inline constexpr double kraus_complete = 1e-10;  // sum K^dag K = I
inline constexpr double branch_prune = 1e-14;    // measurement branches below are dropped
inline constexpr double monotonicity = 1e-9;     // LOCC average-entanglement slack
inline constexpr double loader_norm = 1e-6;      // JSON loader rejects beyond this

}  // namespace ebit::tol
