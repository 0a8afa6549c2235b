#include "qptau/report.hpp"

namespace qptau {

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["pass"] = pass();
    j["config"] = config;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["identity"] = c.identity;
        e["mode"] = c.mode;
        e["pass"] = c.pass;
        if (!c.residual.empty()) e["residual"] = c.residual;
        if (!c.witness.empty()) e["witness"] = c.witness;
        if (!c.params.is_null()) e["params"] = c.params;
        if (!c.truncation.is_null()) e["truncation"] = c.truncation;
        arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    return j;
}

} // namespace qptau
