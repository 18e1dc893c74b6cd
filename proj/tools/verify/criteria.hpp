#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "transport1d/field.hpp"

namespace transport1d::verify {

struct CriterionResult {
    std::string id;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct SuiteOptions {
    // Replaces the per-criterion lattice size (nx = nt) where one applies.
    std::optional<std::size_t> resolution;
    // Extra scenarios (for example tabulated ones) added to the scenario-generic checks.
    std::vector<Scenario> extra_scenarios;
    std::size_t jobs = 1;
};

struct Criterion {
    std::string id;
    std::string summary;
    std::function<CriterionResult(const SuiteOptions&)> run;
};

const std::vector<Criterion>& criteria();

// Shell-style pattern with '*' and '?'.
bool glob_match(const std::string& pattern, const std::string& text);

// Comma-separated list of glob patterns; empty selects everything.
bool selected_by(const std::string& only, const std::string& id);

// Criteria selected by `only`, in table order.
std::vector<CriterionResult> run_criteria(const SuiteOptions& opts, const std::string& only = "");

std::string format_result(const CriterionResult& r);

}  // namespace transport1d::verify
