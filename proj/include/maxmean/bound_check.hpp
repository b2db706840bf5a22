#pragma once

#include <string>

#include <json.hpp>

namespace maxmean {

// Result of verifying one inequality: passed <=> lhs <= rhs + tol-scaled slack
// (strict checks set tol = 0). witness carries the data realizing lhs, enough
// to re-evaluate it independently.
struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double tol = 0.0;
    bool passed = false;
    nlohmann::json witness;

    double slack() const { return rhs - lhs; }
};

inline void to_json(nlohmann::json& j, const BoundCheck& c) {
    j = nlohmann::json{
        {"name", c.name}, {"lhs", c.lhs},       {"rhs", c.rhs},
        {"slack", c.slack()}, {"tol", c.tol},   {"passed", c.passed},
        {"witness", c.witness},
    };
}

}  // namespace maxmean
