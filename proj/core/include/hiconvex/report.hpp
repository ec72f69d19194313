#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace hiconvex {

/**
 * Uniform result record for every inequality checker.
 *
 * margin is the smallest slack across all parts of the check, signed so that
 * `holds == (margin >= -tol)` with the tolerance the checker used. lhs/rhs
 * carry the two headline values of the inequality (checker-specific reading,
 * documented per operation). witness holds named diagnostic values; cases
 * holds classification labels and precondition warnings.
 */
struct InequalityReport {
    bool verdict = false;
    double margin = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    nlohmann::json witness = nlohmann::json::object();
    std::vector<std::string> cases;

    void add_case(std::string label) { cases.push_back(std::move(label)); }
    bool has_case(const std::string& label) const {
        for (const auto& c : cases)
            if (c == label) return true;
        return false;
    }
};

nlohmann::json to_json(const InequalityReport& r);
InequalityReport report_from_json(const nlohmann::json& j);

// Scale-aware default tolerance: 1e-9 * (1 + scale).
inline double default_tol(double scale) { return 1e-9 * (1.0 + scale); }

} // namespace hiconvex
