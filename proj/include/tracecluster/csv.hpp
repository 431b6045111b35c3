#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tracecluster::csv {

using Record = std::vector<std::string>;

/// Splits RFC-4180 text into records. Quoted fields may contain commas,
/// doubled quotes and line breaks; CRLF and LF line endings are accepted.
/// A blank final line is ignored. Throws kMalformedCsv on an unterminated
/// quote or stray characters after a closing quote.
std::vector<Record> parse(std::string_view text);

/// Quotes a field only when it contains a comma, quote or line break.
std::string escape(std::string_view field);

std::string join(const Record& record);

std::string read_file(const std::filesystem::path& path);

}  // namespace tracecluster::csv
