#pragma once

#include "stark/potential.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stark {

struct CriterionResult {
    std::string id;
    std::string description;
    double measured = 0;
    double expected = 0;
    double tolerance = 0;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<CriterionResult> criteria;
    bool overall = false;
    double runtime_seconds = 0;
};

struct AcceptanceConfig {
    // Field sweep for the string criteria A3, A4 and A9, strictly descending.
    std::vector<double> f_list{0.2, 0.1, 0.05};
    // Added to the unitarity corpus of A8.
    std::optional<Potential> extra;
    int threads = 1;
    // Criterion ids to run; empty runs all of A1..A9.
    std::vector<std::string> only;
};

VerifyReport run_acceptance(const AcceptanceConfig& cfg);

std::string report_to_json(const VerifyReport& r);

} // namespace stark
