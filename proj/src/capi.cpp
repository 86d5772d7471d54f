#include "tgring.h"

#include <string>

#include "tgr/cohom.hpp"
#include "tgr/suites.hpp"

struct tgr_report {
    tgr::Report r;
    std::string json, text;
};

struct tgr_tower {
    tgr::TowerPtr T;
    std::string ring;
};

namespace {

thread_local std::string last_error;

tgr_status code(tgr::ErrorKind k) {
    switch (k) {
        case tgr::ErrorKind::usage: return TGR_E_USAGE;
        case tgr::ErrorKind::domain: return TGR_E_DOMAIN;
        case tgr::ErrorKind::precondition: return TGR_E_PRECONDITION;
        case tgr::ErrorKind::consistency: return TGR_E_CONSISTENCY;
        case tgr::ErrorKind::resource: return TGR_E_RESOURCE;
    }
    return TGR_E_INTERNAL;
}

template <class F>
tgr_status guarded(F&& f) {
    last_error.clear();
    try {
        f();
        return TGR_OK;
    } catch (const tgr::Error& e) {
        last_error = e.what();
        return code(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return TGR_E_RESOURCE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return TGR_E_INTERNAL;
    }
}

tgr_status null_arg(const char* what) {
    last_error = std::string("null argument: ") + what;
    return TGR_E_USAGE;
}

}  // namespace

extern "C" {

const char* tgr_version(void) { return "1.0.0"; }

const char* tgr_last_error(void) { return last_error.c_str(); }

void tgr_options_init(tgr_options* o) {
    if (!o) return;
    o->p = 3;
    o->n = 2;
    o->threads = 1;
    o->force = 0;
}

tgr_status tgr_run(const char* command, const char* target, const tgr_options* o, tgr_report** out) {
    if (!command) return null_arg("command");
    if (!o) return null_arg("options");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        tgr::RunOptions ro;
        ro.p = o->p;
        ro.n = o->n;
        ro.threads = o->threads ? o->threads : 1;
        ro.force = o->force != 0;
        const std::string cmd = command, tgt = target ? target : "all";
        tgr::Report r;
        if (cmd == "ring") r = tgr::run_ring(ro);
        else if (cmd == "verify") r = tgr::run_verify(tgt, ro);
        else if (cmd == "appendix") r = tgr::run_appendix(tgt, ro);
        else if (cmd == "oracle") r = tgr::run_oracle(tgt, ro);
        else tgr::fail(tgr::ErrorKind::usage, "unknown command " + cmd);
        *out = new tgr_report{std::move(r), {}, {}};
    });
}

void tgr_report_free(tgr_report* r) { delete r; }

int tgr_report_passed(const tgr_report* r) { return r && r->r.passed() ? 1 : 0; }

size_t tgr_report_check_count(const tgr_report* r) { return r ? r->r.checks.size() : 0; }

tgr_status tgr_report_check(const tgr_report* r, size_t i, const char** name, const char** status, const char** expected,
                            const char** actual, const char** detail) {
    if (!r) return null_arg("report");
    if (i >= r->r.checks.size()) {
        last_error = "check index out of range";
        return TGR_E_USAGE;
    }
    const auto& c = r->r.checks[i];
    if (name) *name = c.name.c_str();
    if (status) *status = tgr::to_string(c.status);
    if (expected) *expected = c.expected.c_str();
    if (actual) *actual = c.actual.c_str();
    if (detail) *detail = c.detail.c_str();
    return TGR_OK;
}

long tgr_report_elapsed_ms(const tgr_report* r) { return r ? r->r.elapsed_ms : 0; }

const char* tgr_report_json(tgr_report* r, int timing) {
    if (!r) return nullptr;
    r->json = tgr::report_json(r->r, timing != 0);
    return r->json.c_str();
}

const char* tgr_report_text(tgr_report* r, int timing) {
    if (!r) return nullptr;
    r->text = tgr::report_text(r->r, timing != 0);
    return r->text.c_str();
}

tgr_status tgr_tower_create(long p, long n, tgr_tower** out) {
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = new tgr_tower{tgr::ExtensionTower::cyclotomic(p, n), {}}; });
}

void tgr_tower_free(tgr_tower* t) { delete t; }

tgr_status tgr_tower_invariants(const tgr_tower* t, long* b, long* b_bar, long* b_under, long* disc_val) {
    if (!t) return null_arg("tower");
    if (b) *b = t->T->b();
    if (b_bar) *b_bar = t->T->b_bar();
    if (b_under) *b_under = t->T->b_under();
    if (disc_val) *disc_val = t->T->discriminant_valuation();
    return TGR_OK;
}

tgr_status tgr_tower_ring(tgr_tower* t, const char** text) {
    if (!t) return null_arg("tower");
    if (!text) return null_arg("text");
    return guarded([&] {
        if (t->ring.empty()) t->ring = tgr::ring_presentation(*t->T).text;
        *text = t->ring.c_str();
    });
}

tgr_status tgr_structure_constant(long p, long b, long j, long k, int* present, long* exponent, long* unit,
                                  int* zero_in_quotient) {
    return guarded([&] {
        tgr::require_odd_prime(p);
        if (b < 1) tgr::fail(tgr::ErrorKind::usage, "b must be positive");
        tgr::StructureConstant c = tgr::structure_constant(p, b, j, k);
        if (present) *present = c.present ? 1 : 0;
        if (exponent) *exponent = c.exponent;
        if (unit) *unit = c.unit;
        if (zero_in_quotient) *zero_in_quotient = c.zero_in_quotient ? 1 : 0;
    });
}

}  // extern "C"
