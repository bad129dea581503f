#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "ebit/asymptotic.hpp"
#include "ebit/locc.hpp"
#include "ebit/measures.hpp"
#include "ebit/state.hpp"

namespace ebit {

// Fixed-point rendering with 12 fractional digits, locale-independent.
// Every numeric column and printed scalar goes through this.
std::string format_real(double v);

// State files: {"dim_a": int, "dim_b": int, "amps": [[re, im], ...]},
// amps row-major of length dim_a*dim_b.  Loading rejects norms deviating
// from 1 by more than 1e-6 (InvariantError) and renormalizes below that.
nlohmann::json state_to_json(const BipartiteState& s);
BipartiteState state_from_json(const nlohmann::json& j);
BipartiteState load_state(const std::string& path);
void save_state(const BipartiteState& s, const std::string& path);

// Protocol files: ordered array of steps {"side": "A"|"B", "kind":
// "unitary"|"measurement", "matrix": [...] | "kraus": [[...], ...],
// "when": optional array of outcome labels}.  Matrices are flat row-major
// [re, im] pairs; the side dimension is the square root of the length.
nlohmann::json protocol_to_json(const Protocol& p);
Protocol protocol_from_json(const nlohmann::json& j);
Protocol load_protocol(const std::string& path);
void save_protocol(const Protocol& p, const std::string& path);

// Uniqueness report: a JSON array of per-candidate records with boolean
// axiom fields; failed axioms embed counterexample objects carrying the
// inputs and the RngSpec.  Output is deterministic byte for byte.
nlohmann::json report_to_json(const MeasureReport& report);

// Replayable monotonicity-violation dump: the violating state and
// protocol are regenerated from the recorded RngSpecs and embedded.
nlohmann::json sweep_violation_to_json(const SweepViolation& v);

nlohmann::json ratio_to_json(const std::vector<RatioRow>& rows);
std::string ratio_to_csv(const std::vector<RatioRow>& rows);

nlohmann::json dilution_to_json(const std::vector<RateFidelityPoint>& points);
std::string dilution_to_csv(const std::vector<RateFidelityPoint>& points);

nlohmann::json yields_to_json(const std::vector<YieldEstimate>& rows);
std::string yields_to_csv(const std::vector<YieldEstimate>& rows);

// Read failures throw ParseError (unreadable input is invalid input);
// write failures throw IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ebit
