#pragma once

// State files, partition strings and source resolution shared by the CLI
// and its tests.
//
// State file (JSON):
//   { "dims": [d1, ..., dn], "amplitudes": [[re, im], ...] }
// amplitudes in flat row-major order, subsystem 1 most significant.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "epi/tensor_core.hpp"

namespace epi {

/// Prefix marking gallery sources ("gallery:example2").
inline constexpr std::string_view kGalleryPrefix = "gallery:";

/// Norm deviations up to this are normalized silently.
inline constexpr double kStateFileSilentTol = 1e-9;
/// Norm deviations up to this are normalized with a warning; beyond it the file is rejected.
inline constexpr double kStateFileWarnTol = 1e-6;

[[nodiscard]] nlohmann::json state_to_json(const Ket& psi);
/// Warnings (renormalization) go to `warn`.
[[nodiscard]] Ket state_from_json(const nlohmann::json& doc, std::ostream& warn);

void write_state_file(const Ket& psi, const std::string& path);
[[nodiscard]] Ket read_state_file(const std::string& path, std::ostream& warn);

/// "gallery:<name>" or a path to a state file.
[[nodiscard]] Ket resolve_source(const std::string& source, std::ostream& warn);

/// Parses "1|2,3|4" (1-based members, blocks separated by '|', members by ',').
[[nodiscard]] Partition parse_partition(const std::string& text, int parties);

/// Renders a partition back to the 1-based text form.
[[nodiscard]] std::string format_partition(const Partition& partition);

/// Parses a comma separated list of integers ("2,2,2").
[[nodiscard]] std::vector<int> parse_int_list(const std::string& text);
/// Parses a comma separated list of reals.
[[nodiscard]] std::vector<double> parse_real_list(const std::string& text);

/// Serializes JSON with every floating-point number printed to `precision`
/// significant digits. Keys keep the document's insertion order.
void write_json(std::ostream& os, const nlohmann::ordered_json& doc, int precision = 17);

/// Number formatting shared by CSV output.
[[nodiscard]] std::string format_number(double v, int precision);

}  // namespace epi
