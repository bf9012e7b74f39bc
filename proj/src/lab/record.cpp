#include "weyl/record.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace weyl::lab {

nlohmann::json to_json(const ResultRecord& r) {
    return {{"schema", r.schema},     {"subcommand", r.subcommand}, {"config", r.config},
            {"outputs", r.outputs},   {"wall_time", r.wall_time},   {"version", r.version}};
}

ResultRecord from_json(const nlohmann::json& j) {
    ResultRecord r;
    r.schema = j.at("schema").get<int>();
    if (r.schema != kSchema) throw std::runtime_error("unsupported record schema");
    r.subcommand = j.at("subcommand").get<std::string>();
    r.config = j.at("config");
    r.outputs = j.at("outputs");
    r.wall_time = j.at("wall_time").get<double>();
    r.version = j.at("version").get<std::string>();
    return r;
}

std::string emit(const ResultRecord& r) { return to_json(r).dump(2); }

ResultRecord parse(const std::string& text) { return from_json(nlohmann::json::parse(text)); }

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void Table::add(std::vector<nlohmann::json> row) {
    if (row.size() != header.size()) throw std::logic_error("row width differs from the header");
    rows.push_back(std::move(row));
}

nlohmann::json Table::to_json() const {
    auto out = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json o = nlohmann::json::object();
        for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = row[i];
        out.push_back(std::move(o));
    }
    return out;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string cell(const nlohmann::json& v) {
    if (v.is_number_float()) return format_real(v.get<double>());
    if (v.is_string()) return csv_field(v.get<std::string>());
    return csv_field(v.dump());
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csv_field(t.header[i]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
        os << '\n';
    }
}

}  // namespace weyl::lab
