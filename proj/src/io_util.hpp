#pragma once

// Internal helpers shared by the file loaders. Not installed.

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ontosearch/error.hpp"

namespace ontosearch::detail {

std::ifstream open_input(const std::filesystem::path& path,
                         std::ios::openmode mode = std::ios::in);
std::ofstream open_output(const std::filesystem::path& path,
                          std::ios::openmode mode = std::ios::out);

/// Calls fn(line_number, line) for every line that is neither empty nor a
/// '#' comment. A trailing '\r' is stripped.
void for_each_record(const std::filesystem::path& path,
                     const std::function<void(std::size_t, std::string_view)>& fn);

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::string location(const std::filesystem::path& path, std::size_t line);

/// Parses a finite double; throws `code` on failure.
double parse_double(std::string_view s, ErrorCode code, const std::string& where);

}  // namespace ontosearch::detail
