// Command-line front end; talks to the library only through tgring.h.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tgring.h"

namespace {

struct Common {
    long p = 3;
    long n = 2;
    std::string format = "text";
    unsigned threads = 1;
    bool force = false;
    bool no_timing = false;
};

void add_common(CLI::App* sub, Common& c, bool with_n) {
    sub->add_option("--p", c.p, "odd prime p")->capture_default_str();
    if (with_n) sub->add_option("--n", c.n, "tower level n >= 2")->capture_default_str();
    sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    sub->add_option("--threads", c.threads, "worker threads for independent checks (WORKBENCH_THREADS overrides)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--force", c.force, "lift the size guards");
    sub->add_flag("--no-timing", c.no_timing, "report elapsed_ms as 0 for byte-identical output");
}

int run(const char* command, const std::string& target, const Common& c) {
    tgr_options o;
    tgr_options_init(&o);
    o.p = c.p;
    o.n = c.n;
    o.threads = c.threads;
    o.force = c.force ? 1 : 0;
    if (const char* env = std::getenv("WORKBENCH_THREADS")) {
        char* end = nullptr;
        const long t = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || t < 1) {
            std::cerr << "error: WORKBENCH_THREADS must be a positive integer\n";
            return 2;
        }
        o.threads = static_cast<unsigned>(t);
    }
    tgr_report* r = nullptr;
    const tgr_status s = tgr_run(command, target.c_str(), &o, &r);
    if (s != TGR_OK) {
        std::cerr << "error: " << tgr_last_error() << "\n";
        switch (s) {
            case TGR_E_USAGE:
            case TGR_E_DOMAIN:
            case TGR_E_PRECONDITION:
            case TGR_E_RESOURCE: return 2;
            default: return 1;
        }
    }
    const int timing = c.no_timing ? 0 : 1;
    std::cout << (c.format == "json" ? tgr_report_json(r, timing) : tgr_report_text(r, timing));
    const int code = tgr_report_passed(r) ? 0 : 1;
    tgr_report_free(r);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cohomology of twisted group rings of cyclic Galois extensions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tgr_version());

    Common ring_o, verify_o, app_o, oracle_o;
    std::string verify_target, app_check = "all", oracle_method = "all";

    auto* ring = app.add_subcommand("ring", "cohomology ring presentation and Ext table");
    add_common(ring, ring_o, true);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("target", verify_target, "ft16 | resolution | ag11 | nd3 | nd7 | all")
        ->required()
        ->check(CLI::IsMember({"ft16", "resolution", "ag11", "nd3", "nd7", "all"}));
    add_common(verify, verify_o, true);

    auto* appx = app.add_subcommand("appendix", "the C_{p^2} experiment");
    appx->add_option("--check", app_check, "conjecture | colengths | matrices | all")
        ->check(CLI::IsMember({"conjecture", "colengths", "matrices", "all"}))
        ->capture_default_str();
    add_common(appx, app_o, false);

    auto* oracle = app.add_subcommand("oracle", "independent cross-checks");
    oracle->add_option("--method", oracle_method, "classical | bar | lift | all")
        ->check(CLI::IsMember({"classical", "bar", "lift", "all"}))
        ->capture_default_str();
    add_common(oracle, oracle_o, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (*ring) return run("ring", "", ring_o);
    if (*verify) return run("verify", verify_target, verify_o);
    if (*appx) return run("appendix", app_check, app_o);
    return run("oracle", oracle_method, oracle_o);
}
