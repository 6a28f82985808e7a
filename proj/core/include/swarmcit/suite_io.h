#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "swarmcit/model.h"

namespace swarmcit {

enum class SuiteFormat { kPlain, kCsv, kJsonLines };

// Throws Error for anything other than "plain", "csv" or "json-lines".
SuiteFormat parse_suite_format(std::string_view name);

// plain:      "N k t" header, then N lines of k space-separated values
// csv:        "p0,p1,...,p{k-1}" header, then comma-separated rows
// json-lines: one JSON array per row
std::string format_suite(const TestSuite& suite, const SystemModel& model,
                         SuiteFormat format);

// Reads the plain format back. Throws ParseError on malformed input and when
// the header disagrees with the rows or the model's k.
TestSuite parse_suite(std::string_view text, const SystemModel& model);
TestSuite load_suite(const std::filesystem::path& path, const SystemModel& model);

}  // namespace swarmcit
