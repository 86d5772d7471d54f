#include "doctest.h"
#include "json.hpp"
#include "tgr/errors.hpp"
#include "tgr/suites.hpp"

using namespace tgr;

TEST_SUITE("cli") {

TEST_CASE("ring report") {
    RunOptions o;
    const Report r = run_ring(o);
    CHECK(r.passed());
    REQUIRE(!r.notes.empty());
    CHECK(r.notes[0] == "Z_(3)[h1,h2]/(3h1,3h2,h1^2)");
    const auto j = nlohmann::json::parse(report_json(r));
    CHECK(j.at("command") == "ring");
    CHECK(j.at("params").at("p") == 3);
    CHECK(j.at("checks").is_array());
    for (const auto& c : j.at("checks")) {
        CHECK(c.contains("name"));
        CHECK(c.contains("status"));
        CHECK(c.contains("expected"));
        CHECK(c.contains("actual"));
        CHECK(c.contains("detail"));
    }
    CHECK(j.contains("elapsed_ms"));
}

TEST_CASE("ring for p = 5 lists four odd generators") {
    RunOptions o;
    o.p = 5;
    const auto j = nlohmann::json::parse(report_json(run_ring(o)));
    int odd = 0;
    for (const auto& c : j.at("checks"))
        if (c.at("name").get<std::string>().rfind("odd generator", 0) == 0) ++odd;
    CHECK(odd == 4);
}

TEST_CASE("reports are deterministic without timing") {
    RunOptions o;
    CHECK(report_json(run_verify("ft16", o), false) == report_json(run_verify("ft16", o), false));
    CHECK(report_text(run_oracle("all", o), false) == report_text(run_oracle("all", o), false));
    const auto j = nlohmann::json::parse(report_json(run_verify("ft16", o), false));
    CHECK(j.at("elapsed_ms") == 0);
}

TEST_CASE("text and json carry the same checks") {
    RunOptions o;
    const Report r = run_verify("resolution", o);
    const auto j = nlohmann::json::parse(report_json(r));
    const std::string text = report_text(r);
    CHECK(j.at("checks").size() == r.checks.size());
    for (const auto& c : r.checks) CHECK(text.find(c.name) != std::string::npos);
}

TEST_CASE("thread count does not change the report") {
    RunOptions a, b;
    a.p = b.p = 3;
    b.threads = 3;
    std::string ja = report_json(run_appendix("conjecture", a), false), jb = report_json(run_appendix("conjecture", b), false);
    // params record the thread count; the checks must match
    CHECK(nlohmann::json::parse(ja).at("checks") == nlohmann::json::parse(jb).at("checks"));
}

TEST_CASE("conjecture rows are evidence") {
    RunOptions o;
    const Report r = run_appendix("conjecture", o);
    CHECK(r.passed());
    long evidence = 0;
    for (const auto& c : r.checks) evidence += c.status == Status::evidence;
    // nine values of tau plus the summary row
    CHECK(evidence == 10);
}

TEST_CASE("usage and resource errors") {
    RunOptions o;
    o.p = 4;
    try {
        run_ring(o);
        FAIL("expected a usage error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::usage);
        CHECK(std::string(e.what()).find("p must be an odd prime") != std::string::npos);
    }
    RunOptions q;
    CHECK_THROWS_AS(run_verify("nope", q), Error);
    CHECK_THROWS_AS(run_appendix("nope", q), Error);
    CHECK_THROWS_AS(run_oracle("nope", q), Error);
    q.n = 5;
    try {
        run_ring(q);
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::resource);
    }
}

}  // TEST_SUITE
