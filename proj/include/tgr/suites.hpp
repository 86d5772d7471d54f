#pragma once

// Report assembly for the command-line surface: each run_* call gathers the
// check lines of one command in a fixed order.

#include <string>
#include <variant>
#include <vector>

namespace tgr {

enum class Status { pass, fail, evidence };
const char* to_string(Status s);

struct ReportCheck {
    std::string name;
    Status status = Status::fail;
    std::string expected, actual, detail;
};

using ParamValue = std::variant<long, bool, std::string>;

struct Report {
    std::string command;
    std::vector<std::pair<std::string, ParamValue>> params;
    std::vector<ReportCheck> checks;
    std::vector<std::string> notes;  // human-readable extras (presentation text, skipped suites)
    long elapsed_ms = 0;
    bool passed() const;
};

struct RunOptions {
    long p = 3;
    long n = 2;
    unsigned threads = 1;
    bool force = false;
};

Report run_ring(const RunOptions& o);
// target: ft16 | resolution | ag11 | nd3 | nd7 | all
Report run_verify(const std::string& target, const RunOptions& o);
// check: conjecture | colengths | matrices | all
Report run_appendix(const std::string& check, const RunOptions& o);
// method: classical | bar | lift | all
Report run_oracle(const std::string& method, const RunOptions& o);

// elapsed_ms is written as 0 when timing is off
std::string report_json(const Report& r, bool timing = true);
std::string report_text(const Report& r, bool timing = true);

}  // namespace tgr
