#include "qptau.h"

#include "qptau/suites.hpp"
#include "qptau/errors.hpp"

#include <cstring>
#include <string>

using namespace qptau;

struct qptau_session {
    suites::SuiteConfig cfg;
    std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

qptau_status classify(qptau_session* s, const std::exception& e) {
    if (s) s->last_error = e.what();
    if (dynamic_cast<const resonance_error*>(&e)) return QPTAU_RESONANCE;
    if (dynamic_cast<const mode_error*>(&e)) return QPTAU_MODE_ERROR;
    if (dynamic_cast<const pole_error*>(&e)) return QPTAU_POLE;
    if (dynamic_cast<const region_error*>(&e)) return QPTAU_REGION;
    if (dynamic_cast<const singular_error*>(&e)) return QPTAU_SINGULAR;
    if (dynamic_cast<const domain_error*>(&e)) return QPTAU_BAD_ARGUMENT;
    if (dynamic_cast<const error*>(&e)) return QPTAU_INTERNAL;
    return QPTAU_INTERNAL;
}

} // namespace

extern "C" {

qptau_status qptau_session_new(const char* config_json, qptau_session** out) {
    if (!out) return QPTAU_BAD_ARGUMENT;
    *out = nullptr;
    try {
        auto j = nlohmann::json::parse(config_json ? config_json : "{}");
        auto s = new qptau_session{suites::SuiteConfig::from_json(j), {}};
        *out = s;
        return QPTAU_OK;
    } catch (const std::exception&) {
        return QPTAU_BAD_ARGUMENT;
    }
}

void qptau_session_free(qptau_session* s) { delete s; }

const char* qptau_session_last_error(const qptau_session* s) {
    return s ? s->last_error.c_str() : "";
}

qptau_status qptau_run_suite(qptau_session* s, const char* suite, char** report_json) {
    if (!s || !suite || !report_json) return QPTAU_BAD_ARGUMENT;
    *report_json = nullptr;
    try {
        Report rep = suites::run_suite(suite, s->cfg);
        *report_json = dup_string(rep.to_string());
        return rep.pass() ? QPTAU_OK : QPTAU_CHECK_FAILED;
    } catch (const std::exception& e) {
        return classify(s, e);
    }
}

qptau_status qptau_eval_tau(qptau_session* s, char** values_json) {
    if (!s || !values_json) return QPTAU_BAD_ARGUMENT;
    *values_json = nullptr;
    try {
        auto j = suites::eval_tau(s->cfg);
        *values_json = dup_string(j.dump(2) + "\n");
        return QPTAU_OK;
    } catch (const std::exception& e) {
        return classify(s, e);
    }
}

void qptau_string_free(char* p) { std::free(p); }

const char* qptau_version(void) { return "0.1.0"; }

} // extern "C"
