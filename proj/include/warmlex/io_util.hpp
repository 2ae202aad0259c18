#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace warmlex {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

// Strict parses: the whole field must be consumed. Locale-independent.
std::optional<double> try_parse_double(std::string_view text);
std::optional<long long> try_parse_int(std::string_view text);

// Splits on a single delimiter, keeping empty fields.
std::vector<std::string_view> split_fields(std::string_view line, char delim);

std::string ascii_lower(std::string_view text);

constexpr bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

constexpr bool is_ascii_punct(char c) {
    return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
           (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

// Whole file as bytes; throws IoError when unreadable.
std::string read_text_file(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames into place. Content goes out
// byte-for-byte (no newline translation).
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

}  // namespace warmlex
