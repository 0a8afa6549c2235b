#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace qptau {

// One verified identity (or one failed one).
struct CheckResult {
    std::string identity;
    nlohmann::ordered_json params;     // inputs the check ran at
    std::string mode;                  // "exact" or "float"
    bool pass = false;
    std::string residual;              // formatted number; empty for exact checks
    std::string witness;               // set when pass is false
    nlohmann::ordered_json truncation; // K, N, P, keta, bits as applicable
};

// Result of one suite run. Serialization is insertion-ordered and all
// numbers are carried as fixed-format strings, so identical runs produce
// byte-identical reports.
struct Report {
    std::string suite;
    nlohmann::ordered_json config;
    std::vector<CheckResult> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    nlohmann::ordered_json to_json() const;
    std::string to_string() const { return to_json().dump(2) + "\n"; }
};

} // namespace qptau
