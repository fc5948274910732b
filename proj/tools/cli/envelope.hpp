#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace bwcli {

inline constexpr const char* kSchemaVersion = "1.0.0";

enum class Format { csv, json };

using Cell = std::variant<double, long long, std::string, std::nullptr_t>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// One result: metadata plus either a table or a check report.
struct Envelope {
    std::string command;
    nlohmann::ordered_json input = nlohmann::ordered_json::object();
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
    std::optional<Table> table;
    std::optional<nlohmann::ordered_json> report;
    bool timestamp = false;
};

nlohmann::ordered_json units_stanza();

/// %.{precision}g, with "nan"/"inf" spelled out.
std::string format_number(double x, int precision);

void write(std::ostream& out, const Envelope& envelope, Format format, int precision);

}  // namespace bwcli
