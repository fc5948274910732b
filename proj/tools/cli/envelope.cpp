#include "envelope.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

#include <bohrwave/bohrwave.h>

namespace bwcli {

using nlohmann::ordered_json;

namespace {

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

ordered_json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else {
                return v;
            }
        },
        c);
}

std::string cell_csv(const Cell& c, int precision) {
    return std::visit(
        [precision](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return format_number(v, precision);
            else if constexpr (std::is_same_v<T, long long>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<T, std::string>)
                return csv_escape(v);
            else
                return "";
        },
        c);
}

ordered_json header(const Envelope& e) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = e.command;
    j["units"] = units_stanza();
    j["input"] = e.input;
    j["metadata"] = e.metadata;
    ordered_json prov;
    prov["tool"] = "bohrwave";
    prov["version"] = bw_version();
    if (e.timestamp) prov["timestamp"] = utc_now();
    j["provenance"] = prov;
    return j;
}

}  // namespace

ordered_json units_stanza() {
    ordered_json u;
    u["system"] = "natural";
    u["c"] = 1;
    u["hbar"] = 1;
    u["mass"] = "m_eff";
    u["length"] = "1/m_eff; grid coordinates in a0 = 1/(m_eff alpha)";
    u["time"] = "1/m_eff";
    u["velocity"] = "c";
    u["angle"] = "rad";
    return u;
}

std::string format_number(double x, int precision) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

void write(std::ostream& out, const Envelope& e, Format format, int precision) {
    ordered_json j = header(e);
    if (format == Format::json) {
        ordered_json payload;
        if (e.table) {
            payload["kind"] = "table";
            payload["columns"] = e.table->columns;
            ordered_json rows = ordered_json::array();
            for (const auto& row : e.table->rows) {
                ordered_json r = ordered_json::array();
                for (const Cell& c : row) r.push_back(cell_json(c));
                rows.push_back(std::move(r));
            }
            payload["rows"] = std::move(rows);
        } else if (e.report) {
            payload = *e.report;
            payload["kind"] = "report";
        }
        j["payload"] = std::move(payload);
        out << j.dump(2) << '\n';
        return;
    }

    out << "# bohrwave " << e.command << '\n';
    out << "# envelope: " << j.dump() << '\n';
    if (e.table) {
        for (std::size_t i = 0; i < e.table->columns.size(); ++i)
            out << (i ? "," : "") << csv_escape(e.table->columns[i]);
        out << '\n';
        for (const auto& row : e.table->rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_csv(row[i], precision);
            out << '\n';
        }
    } else if (e.report) {
        for (const auto& c : (*e.report)["checks"]) {
            const double measured = c["measured"].is_number() ? c["measured"].get<double>() : std::nan("");
            out << (c["passed"].get<bool>() ? "PASS" : "FAIL") << "  " << c["name"].get<std::string>()
                << "  measured=" << format_number(measured, 6)
                << "  threshold=" << format_number(c["threshold"].get<double>(), 6) << "  [" << c["identity"].get<std::string>()
                << "]";
            const std::string detail = c["detail"].get<std::string>();
            if (!detail.empty()) out << "  " << detail;
            out << '\n';
        }
        out << "summary: " << (*e.report)["passed_count"].get<long long>() << "/" << (*e.report)["checks"].size()
            << " passed\n";
    }
}

}  // namespace bwcli
