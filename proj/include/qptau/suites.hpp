#pragma once

#include "qptau/report.hpp"

#include <string>
#include <vector>

namespace qptau::suites {

// Shared configuration for every suite; defaults reproduce the acceptance
// runs. Unknown JSON keys are rejected so typos cannot silently fall back
// to defaults.
struct SuiteConfig {
    int bits = 128;
    long P = 256;
    long K = 8, N = 6, keta = 12;
    int threads = 1;
    bool inject_defect = false;
    bool convention_probe = false;
    bool with_riemann = false;
    int trace_steps = 3;
    long max_weight = -1; // overrides the sweep weight caps when >= 0
    int eps_prime = 0;    // braiding column filter: 0 = both

    // exact-suite sample points (rationals)
    std::string q_exact = "2/7", u_exact = "3/5";
    std::string q_exact_2 = "3/8", u_exact_2 = "5/7";

    // float parameters (decimal strings)
    std::string q = "0.3", t = "0.02", s = "0.85";
    std::string theta0 = "0.23", thetat = "0.17", theta1 = "0.31";
    std::string thetainf = "0.29", sigma = "0.137";

    // bilinear grid
    std::vector<std::string> bilinear_q = {"0.25", "0.3", "0.4"};
    std::vector<std::string> bilinear_t = {"0.01", "0.02"};

    // braiding sweep
    std::string braid_q = "0.008";

    // matching-problem (annulus) point
    std::string riemann_q = "0.01", riemann_t = "0.11";
    std::string riemann_theta0 = "0.147", riemann_thetat = "0.11";
    std::string riemann_theta1 = "0.13", riemann_thetainf = "0.163";
    std::string riemann_sigma = "0.1825", riemann_s = "0.9";

    static SuiteConfig from_json(const nlohmann::json& j);
    nlohmann::ordered_json to_json() const;
};

Report run_lemmas(const SuiteConfig& cfg);
Report run_qspecial(const SuiteConfig& cfg);
Report run_braiding(const SuiteConfig& cfg);
Report run_bilinear(const SuiteConfig& cfg);
Report run_qpvi(const SuiteConfig& cfg);
Report run_riemann(const SuiteConfig& cfg);

// Dispatch by name: lemmas, qspecial, braiding, bilinear, qpvi, riemann.
Report run_suite(const std::string& name, const SuiteConfig& cfg);

// tau values at t, qt, t/q for both families, with truncation metadata.
nlohmann::ordered_json eval_tau(const SuiteConfig& cfg);

} // namespace qptau::suites
