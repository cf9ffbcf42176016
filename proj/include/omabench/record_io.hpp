#pragma once

#include "omabench/dsp.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace omabench {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Parse a full decimal field; throws InvalidInput on trailing garbage.
double parse_double(std::string_view text);

/**
 * CSV record: header `time,<label>...`, one row per sample, time = i / rate.
 * Values use shortest round-trip formatting, so write/read is lossless.
 */
void write_record_csv(std::ostream& out, const MultiChannelRecord& record);
void write_record_csv(const std::filesystem::path& path, const MultiChannelRecord& record);

MultiChannelRecord read_record_csv(std::istream& in);
MultiChannelRecord read_record_csv(const std::filesystem::path& path);

}  // namespace omabench
