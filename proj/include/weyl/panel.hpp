#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace weyl::lab {

struct CriterionResult {
    int number = 0;
    std::string id;
    std::string title;
    bool pass = false;
    double seconds = 0.0;
    nlohmann::json checks = nlohmann::json::array();  // name, value, bound, pass
    nlohmann::json info = nlohmann::json::object();   // logged, not asserted
};

struct PanelOptions {
    std::vector<std::string> only;     // criterion ids or numbers; empty runs all
    std::vector<std::string> corrupt;  // ids whose bounds are made unsatisfiable
    unsigned threads = 0;
};

struct CriterionInfo {
    int number;
    const char* id;
    const char* title;
};

const std::vector<CriterionInfo>& criteria();

std::vector<CriterionResult> run_panel(const PanelOptions& opt);

nlohmann::json panel_summary(const std::vector<CriterionResult>& results);

}  // namespace weyl::lab
