// Runs every acceptance criterion and prints one line per criterion.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "weyl/panel.hpp"

int main(int argc, char** argv) {
    weyl::lab::PanelOptions opt;
    const char* summary = nullptr;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--only") && i + 1 < argc) opt.only.push_back(argv[++i]);
        else if (!std::strcmp(argv[i], "--summary") && i + 1 < argc) summary = argv[++i];
    }
    bool all = true;
    auto results = weyl::lab::run_panel(opt);
    for (const auto& r : results) {
        all = all && r.pass;
        std::string failed;
        for (const auto& c : r.checks)
            if (!c["pass"].get<bool>()) {
                failed = c["name"].get<std::string>() + " = " + c["value"].dump() + " (" +
                         c["op"].get<std::string>() + " " + c["bound"].dump() + ")";
                break;
            }
        if (r.info.contains("error")) failed = "error: " + r.info["error"].get<std::string>();
        std::printf("[%s] %2d %-14s %-32s %7.1fs%s%s\n", r.pass ? "PASS" : "FAIL", r.number, r.id.c_str(),
                    r.title.c_str(), r.seconds, failed.empty() ? "" : "  first failure: ", failed.c_str());
        std::fflush(stdout);
    }
    if (summary) std::ofstream(summary) << weyl::lab::panel_summary(results).dump(2) << '\n';
    return all ? 0 : 1;
}
