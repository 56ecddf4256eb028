#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "symeq/code.hpp"

namespace symeq {

// Text format: first non-comment line "n q M", then M lines of n symbols.
// Lines starting with '#' are comments; "# id=<label>" names the code.
Code parse_code(std::string_view text, std::string fallback_id = {});
std::string format_code(const Code& code, const std::vector<std::string>& comments = {});

Code read_code(const std::filesystem::path& path);
void write_code(const Code& code, const std::filesystem::path& path,
                const std::vector<std::string>& comments = {});

}  // namespace symeq
