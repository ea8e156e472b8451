#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sqz {

inline constexpr std::string_view tool_name = "sqz-zeno";
inline constexpr std::string_view tool_version = "0.1.0";

/// 17 significant digits; non-finite values print as nan / inf / -inf.
std::string format_double(double x);

/// 64-bit FNV-1a, hex encoded.
std::string content_hash(std::string_view data);

/// Simple column table rendered as CSV or as JSON rows.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows; ///< numbers, booleans or strings

    std::string to_csv() const;
    nlohmann::json to_json() const;
};

/// Wraps a CSV body with '#' provenance lines: tool, command, resolved config and
/// a hash over config and body. No timestamps, so identical inputs give identical bytes.
std::string with_csv_provenance(std::string_view command, const nlohmann::json& config, const std::string& body);

/// {"provenance": {...}, "result": result} rendered with two-space indentation.
std::string with_json_provenance(std::string_view command, const nlohmann::json& config, const nlohmann::json& result);

} // namespace sqz
