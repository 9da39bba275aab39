#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace jitdp::detail {

// Fields of one physical CSV line (RFC 4180 quoting, no embedded newlines).
std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no);

// Quotes a field when it contains a comma, quote or newline.
std::string quote_csv(std::string_view field);

}  // namespace jitdp::detail
