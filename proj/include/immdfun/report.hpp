#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace immdfun {

/// Outcome of one identity check.
struct VerificationReport {
    std::string suite;
    int m = 0;
    std::vector<int> partition;
    std::vector<int> selector_rows;
    std::vector<int> selector_cols;
    std::uint64_t seed = 0;
    double residual = 0.0;
    bool pass = false;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["suite"] = suite;
        j["m"] = m;
        j["partition"] = partition;
        j["selector_rows"] = selector_rows;
        j["selector_cols"] = selector_cols;
        j["seed"] = seed;
        j["residual"] = residual;
        j["pass"] = pass;
        j["details"] = details;
        return j;
    }
};

inline bool all_pass(const std::vector<VerificationReport> &reports) {
    for (const auto &r : reports)
        if (!r.pass)
            return false;
    return true;
}

} // namespace immdfun
