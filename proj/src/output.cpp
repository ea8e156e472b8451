#include "sqz/output.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sqz {

using nlohmann::json;

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string content_hash(std::string_view data)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string csv_cell(const json& v)
{
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer())
        return std::to_string(v.get<long long>());
    if (v.is_number())
        return format_double(v.get<double>());
    if (v.is_null())
        return "nan";
    std::string s = v.is_string() ? v.get<std::string>() : v.dump();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s)
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

// JSON has no NaN/Inf; they become null.
json json_cell(const json& v)
{
    if (v.is_number_float() && !std::isfinite(v.get<double>()))
        return nullptr;
    return v;
}

} // namespace

std::string Table::to_csv() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
    return os.str();
}

json Table::to_json() const
{
    json out = json::array();
    for (const auto& row : rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size() && i < columns.size(); ++i)
            obj[columns[i]] = json_cell(row[i]);
        out.push_back(std::move(obj));
    }
    return out;
}

std::string with_csv_provenance(std::string_view command, const json& config, const std::string& body)
{
    const std::string cfg = config.dump();
    std::ostringstream os;
    os << "# tool: " << tool_name << ' ' << tool_version << '\n';
    os << "# command: " << command << '\n';
    os << "# config: " << cfg << '\n';
    os << "# content-hash: fnv1a64:" << content_hash(cfg + '\n' + body) << '\n';
    os << body;
    return os.str();
}

std::string with_json_provenance(std::string_view command, const json& config, const json& result)
{
    const std::string cfg = config.dump();
    json doc;
    doc["provenance"] = {{"tool", std::string(tool_name)},
                         {"version", std::string(tool_version)},
                         {"command", std::string(command)},
                         {"config", config},
                         {"content_hash", "fnv1a64:" + content_hash(cfg + '\n' + result.dump())}};
    doc["result"] = result;
    return doc.dump(2) + "\n";
}

} // namespace sqz
