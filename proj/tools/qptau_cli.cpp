// Command-line driver for the qptau verification suites, built on the
// public C interface.

#include "qptau.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

int status_to_exit(qptau_status st) {
    switch (st) {
        case QPTAU_OK: return 0;
        case QPTAU_CHECK_FAILED: return 1;
        default: return 2;
    }
}

struct Options {
    std::string config_path;
    std::string out_path;
    std::optional<std::string> q, t, s, theta0, thetat, theta1, thetainf, sigma;
    std::optional<long> K, N, P, keta, max_weight;
    std::optional<int> bits, threads;
    std::string eps_prime = "both";
    std::optional<int> trace;
    bool convention_probe = false;
    bool with_riemann = false;
    bool inject_defect = false;
    std::string grid; // t0,ratio,count
};

nlohmann::json build_config(const Options& o) {
    nlohmann::json j = nlohmann::json::object();
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw std::runtime_error("cannot open config file: " + o.config_path);
        in >> j;
    }
    auto set = [&](const char* k, const auto& v) { j[k] = v; };
    if (o.q) set("q", *o.q);
    if (o.t) set("t", *o.t);
    if (o.s) set("s", *o.s);
    if (o.theta0) set("theta0", *o.theta0);
    if (o.thetat) set("thetat", *o.thetat);
    if (o.theta1) set("theta1", *o.theta1);
    if (o.thetainf) set("thetainf", *o.thetainf);
    if (o.sigma) set("sigma", *o.sigma);
    if (o.K) set("K", *o.K);
    if (o.N) set("N", *o.N);
    if (o.P) set("P", *o.P);
    if (o.keta) set("keta", *o.keta);
    if (o.max_weight) set("max_weight", *o.max_weight);
    if (o.bits) set("bits", *o.bits);
    if (o.trace) set("trace_steps", *o.trace);
    if (o.convention_probe) set("convention_probe", true);
    if (o.with_riemann) set("with_riemann", true);
    if (o.inject_defect) set("inject_defect", true);
    if (o.eps_prime == "plus") set("eps_prime", 1);
    else if (o.eps_prime == "minus") set("eps_prime", -1);
    int threads = o.threads.value_or(0);
    if (threads == 0) {
        if (const char* env = std::getenv("QPTAU_THREADS")) threads = std::atoi(env);
    }
    if (threads > 0) set("threads", threads);
    return j;
}

void write_output(const Options& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.out_path);
    out << text;
}

int run_check(const Options& o, const std::string& suite) {
    nlohmann::json cfg = build_config(o);
    qptau_session* s = nullptr;
    qptau_status st = qptau_session_new(cfg.dump().c_str(), &s);
    if (st != QPTAU_OK) {
        std::cerr << "error: invalid configuration\n";
        return 2;
    }
    char* report = nullptr;
    st = qptau_run_suite(s, suite.c_str(), &report);
    if (report) {
        write_output(o, report);
        qptau_string_free(report);
    } else {
        std::cerr << "error: " << qptau_session_last_error(s) << "\n";
    }
    qptau_session_free(s);
    return status_to_exit(st);
}

int run_eval_tau(const Options& o) {
    nlohmann::json cfg = build_config(o);
    if (o.grid.empty()) {
        qptau_session* s = nullptr;
        if (qptau_session_new(cfg.dump().c_str(), &s) != QPTAU_OK) {
            std::cerr << "error: invalid configuration\n";
            return 2;
        }
        char* values = nullptr;
        qptau_status st = qptau_eval_tau(s, &values);
        if (values) {
            write_output(o, values);
            qptau_string_free(values);
        } else {
            std::cerr << "error: " << qptau_session_last_error(s) << "\n";
        }
        qptau_session_free(s);
        return status_to_exit(st);
    }
    // grid mode: t0,ratio,count -> CSV over the bilinear family at t
    double t0, ratio;
    int count;
    if (std::sscanf(o.grid.c_str(), "%lf,%lf,%d", &t0, &ratio, &count) != 3 || count <= 0) {
        std::cerr << "error: --grid expects t0,ratio,count\n";
        return 2;
    }
    std::string csv = "t";
    for (int i = 1; i <= 8; ++i) csv += ",tau" + std::to_string(i);
    csv += "\n";
    double t = t0;
    for (int i = 0; i < count; ++i, t *= ratio) {
        char tbuf[40];
        std::snprintf(tbuf, sizeof(tbuf), "%.12g", t);
        cfg["t"] = std::string(tbuf);
        qptau_session* s = nullptr;
        if (qptau_session_new(cfg.dump().c_str(), &s) != QPTAU_OK) return 2;
        char* values = nullptr;
        qptau_status st = qptau_eval_tau(s, &values);
        if (st != QPTAU_OK) {
            std::cerr << "error: " << qptau_session_last_error(s) << "\n";
            qptau_session_free(s);
            return status_to_exit(st);
        }
        auto j = nlohmann::json::parse(values);
        qptau_string_free(values);
        qptau_session_free(s);
        csv += tbuf;
        for (int k = 1; k <= 8; ++k)
            csv += "," + j["bilinear_family"]["tau" + std::to_string(k)]["t"]["value"]
                             .get<std::string>();
        csv += "\n";
    }
    write_output(o, csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-Painleve VI tau functions: evaluators and identity verification suites"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON config file; flags override its entries");
        sub->add_option("--out", o.out_path, "write the report to this path instead of stdout");
        sub->add_option("--q", o.q, "base q (decimal, 0 < q < 1)");
        sub->add_option("--t", o.t, "time parameter t");
        sub->add_option("--s", o.s, "Fourier parameter s");
        sub->add_option("--theta0", o.theta0);
        sub->add_option("--thetat", o.thetat);
        sub->add_option("--theta1", o.theta1);
        sub->add_option("--thetainf", o.thetainf);
        sub->add_option("--sigma", o.sigma);
        sub->add_option("--weight-cap,--K", o.K, "partition weight cap K");
        sub->add_option("--fourier-window,--N", o.N, "Fourier window N");
        sub->add_option("--product-cutoff,--P", o.P, "infinite-product cutoff P");
        sub->add_option("--keta", o.keta, "eta-sum cap of the braiding identity");
        sub->add_option("--max-weight", o.max_weight, "override sweep weight caps");
        sub->add_option("--bits", o.bits, "mantissa bits (default 128)");
        sub->add_option("--threads", o.threads, "worker threads (or QPTAU_THREADS)");
        sub->add_flag("--inject-defect", o.inject_defect,
                      "append a deliberately failing check (harness test fixture)")
            ->group("");
    };

    CLI::App* lemmas = app.add_subcommand("check-lemmas",
                                          "exact product identities of the Nekrasov factor");
    add_common(lemmas);
    CLI::App* qspecial = app.add_subcommand("check-qspecial",
                                            "q-special-function functional equations");
    add_common(qspecial);
    CLI::App* braiding = app.add_subcommand("check-braiding",
                                            "braiding matrix and the general braiding identity");
    add_common(braiding);
    braiding->add_option("--eps-prime", o.eps_prime, "column filter: plus, minus or both")
        ->check(CLI::IsMember({"plus", "minus", "both"}));
    CLI::App* bilinear = app.add_subcommand("check-bilinear",
                                            "bilinear relations of the eight tau functions");
    add_common(bilinear);
    CLI::App* qpvi = app.add_subcommand("check-qpvi", "qPVI dynamics from tau-function ratios");
    add_common(qpvi);
    qpvi->add_option("--trace", o.trace, "orbit steps to compare (default 3)");
    qpvi->add_flag("--convention-probe", o.convention_probe,
                   "report the alternative t-pairing residual alongside");
    qpvi->add_flag("--with-riemann", o.with_riemann, "append the matching-problem suite");
    CLI::App* riemann = app.add_subcommand("check-riemann",
                                           "matrix matching problem: connection, A, B, det");
    add_common(riemann);
    CLI::App* evaltau = app.add_subcommand("eval-tau", "evaluate both tau families");
    add_common(evaltau);
    evaltau->add_option("--grid", o.grid, "t0,ratio,count: emit a CSV over a geometric t-grid");

    CLI11_PARSE(app, argc, argv);

    try {
        if (lemmas->parsed()) return run_check(o, "lemmas");
        if (qspecial->parsed()) return run_check(o, "qspecial");
        if (braiding->parsed()) return run_check(o, "braiding");
        if (bilinear->parsed()) return run_check(o, "bilinear");
        if (qpvi->parsed()) return run_check(o, "qpvi");
        if (riemann->parsed()) return run_check(o, "riemann");
        if (evaltau->parsed()) return run_eval_tau(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
