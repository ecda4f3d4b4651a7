#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "jorca/engine.hpp"
#include "jorca/scenarios.hpp"

namespace jorca {

// ordered_json keeps insertion order, so serialized output is byte-stable
// run to run.
using Json = nlohmann::ordered_json;

/// %.17g formatting: enough significant digits that strtod round-trips the
/// exact double.
std::string format_g17(double x);

/// Write via a temporary file in the same directory plus rename, so readers
/// never observe a partial file.
void atomic_write_file(const std::filesystem::path& path,
                       std::string_view content);

Json to_json(const FieldQuad& q);
Json to_json(const GainReport& report);
Json to_json(const VerificationRecord& record);
Json sweep_to_json(std::string_view scenario, int wing, double eps,
                   std::span<const SweepRow> rows);
Json to_json(const ScanSummary& summary);

std::string to_csv(const VerificationRecord& record);
std::string sweep_to_csv(std::span<const SweepRow> rows);
std::string scan_to_csv(const ScanSummary& summary);

}  // namespace jorca
