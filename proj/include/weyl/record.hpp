#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace weyl::lab {

inline constexpr int kSchema = 1;
inline constexpr const char* kVersion = "0.1.0";

struct ResultRecord {
    int schema = kSchema;
    std::string subcommand;
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json outputs = nlohmann::json::object();
    double wall_time = 0.0;
    std::string version = kVersion;

    bool operator==(const ResultRecord&) const = default;
};

nlohmann::json to_json(const ResultRecord& r);
ResultRecord from_json(const nlohmann::json& j);
std::string emit(const ResultRecord& r);
ResultRecord parse(const std::string& text);

// 17 significant digits, independent of the C locale.
std::string format_real(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<nlohmann::json>> rows;

    void add(std::vector<nlohmann::json> row);
    nlohmann::json to_json() const;  // array of row objects
};

void write_csv(std::ostream& os, const Table& t);

}  // namespace weyl::lab
