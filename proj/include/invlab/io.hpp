#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "invlab/estimation.hpp"

namespace invlab {

inline constexpr const char* kVersion = "0.1.0";

using njson = nlohmann::ordered_json;

using AnyState = std::variant<PureState, DensityMatrix>;

/// { "dims": [...], "type": "pure"|"mixed", "amplitudes"|"matrix": [[re,im],...] },
/// entries row-major.
njson state_to_json(const PureState& psi);
njson state_to_json(const DensityMatrix& rho);
AnyState state_from_json(const njson& j);

/// { "mode": "lu"|"slocc", "r": int, "perms": [[one-line notation, 1-indexed], ...] }.
njson spec_to_json(const PermutationTuple& spec);
PermutationTuple spec_from_json(const njson& j);

njson report_to_json(const EstimationReport& rep);
njson comparison_to_json(const HaarComparison& hc);

njson bloch_to_json(const BlochDecomposition& bd);

/// FNV-1a 64-bit digest of a file's bytes, hex-encoded. Throws on read failure.
std::string file_digest(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace invlab
