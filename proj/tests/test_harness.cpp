#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "zm/harness.hpp"

using namespace zm;

TEST_CASE("complex literals") {
    CHECK(parse_complex("1.5") == CNum(1.5, 0));
    CHECK(parse_complex("2i") == CNum(0, 2));
    CHECK(parse_complex("1+2i") == CNum(1, 2));
    CHECK(parse_complex("-0.5-1e-3i") == CNum(-0.5, -1e-3));
    CHECK(parse_complex("-i") == CNum(0, -1));
    CHECK(parse_complex("3-i") == CNum(3, -1));
    CHECK(parse_complex("1e-3+2.5e2i") == CNum(1e-3, 250));
    CHECK(parse_complex(" -2 ") == CNum(-2, 0));
    for (const char* bad : {"", "abc", "1+2", "1i+2", "1+-2i", "nan", "inf", "1..2", "2ii", "0x10"}) {
        INFO(bad);
        CHECK_THROWS_AS(parse_complex(bad), Error);
    }
}

TEST_CASE("pass rule switches from relative to absolute below |lhs| = 1") {
    VerificationRecord r;
    r.lhs = 0.5;
    r.abs_resid = 2e-9;
    r.rel_resid = 4e-9;
    r.tol = 3e-9;
    finish_record(r);
    CHECK(r.pass);
    r.lhs = 5.0;
    finish_record(r);
    CHECK_FALSE(r.pass);
    r.rel_resid = std::numeric_limits<double>::quiet_NaN();
    finish_record(r);
    CHECK_FALSE(r.pass);
}

TEST_CASE("unknown suite is a usage error") {
    try {
        run_suite("bogus", default_grid());
        FAIL("no throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::usage);
    }
    CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("every listed suite runs") {
    for (const SuiteInfo& s : suite_list()) {
        if (s.id == "convergence" || s.id == "oracle-consistency") continue;
        INFO(s.id);
        const Report r = run_suite(s.id, default_grid());
        CHECK(r.summary.cases > 0);
        CHECK(r.all_pass());
    }
}

TEST_CASE("empty report serializes") {
    Report r;
    r.suite = "empty";
    const auto j = nlohmann::json::parse(emit_string(r, Format::json));
    CHECK(j["records"].is_array());
    CHECK(j["records"].empty());
    CHECK(j["summary"]["cases"] == 0);
    CHECK(j["summary"]["seconds"].is_null());
    const std::string csv = emit_string(r, Format::csv);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
}

TEST_CASE("single record: one CSV row and a field-wise JSON round trip") {
    Report r;
    r.suite = "t";
    VerificationRecord v;
    v.suite = "t";
    v.index = 0;
    v.check = "odd, \"quoted\"";
    v.cs.s = {0.1, -1.0 / 3.0};
    v.cs.a = {-0.7, 0.0};
    v.cs.b = {1e-300, 2.5};
    v.cs.c = 0.25;
    v.cs.d = 2.0;
    v.k = 7;
    v.lhs = {kPi, std::exp(1.0)};
    v.rhs = {std::numeric_limits<double>::infinity(), -0.0};
    v.abs_resid = std::numeric_limits<double>::quiet_NaN();
    v.rel_resid = 1.2345678901234567e-11;
    v.tol = 1e-9;
    v.pass = false;
    v.notes = "line\nbreak";
    r.records.push_back(v);
    r.summary.cases = 1;
    r.summary.max_rel_resid = v.rel_resid;
    r.summary.seconds = 0.125;

    const std::string csv = emit_string(r, Format::csv);
    // header + one record; the quoted note carries one embedded newline
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.find("3.1415926535897931") != std::string::npos);

    const Report back = parse_report_json(emit_string(r, Format::json));
    REQUIRE(back.records.size() == 1);
    const VerificationRecord& w = back.records[0];
    CHECK(back.suite == "t");
    CHECK(back.summary.seconds.value() == 0.125);
    CHECK(w.check == v.check);
    CHECK(w.cs.s == v.cs.s);
    CHECK(w.cs.a == v.cs.a);
    CHECK(w.cs.b == v.cs.b);
    CHECK(w.cs.c == v.cs.c);
    CHECK(w.cs.d == v.cs.d);
    CHECK(w.k == 7);
    CHECK(w.lhs == v.lhs);
    CHECK(std::isinf(w.rhs.real()));
    CHECK(std::signbit(w.rhs.imag()));
    CHECK(std::isnan(w.abs_resid));
    CHECK(w.rel_resid == v.rel_resid);
    CHECK(w.tol == v.tol);
    CHECK(w.pass == v.pass);
    CHECK(w.notes == v.notes);
}

TEST_CASE("suite reports round-trip and are deterministic") {
    const GridSpec g = default_grid();
    const Report a = run_suite("kummer", g);
    const std::string ja = emit_string(a, Format::json);
    CHECK(ja == emit_string(run_suite("kummer", g), Format::json));
    CHECK(emit_string(parse_report_json(ja), Format::json) == ja);

    RunOptions par;
    par.threads = 4;
    CHECK(emit_string(run_suite("kummer", g, par), Format::json) == ja);

    GridSpec other = g;
    other.seed = g.seed + 1;
    CHECK(emit_string(run_suite("kummer", other), Format::json) != ja);
}

TEST_CASE("tolerance override applies to residual checks only") {
    RunOptions opt;
    opt.tol = 1e-30;
    const Report r = run_suite("corollary-limit", default_grid(), opt);
    CHECK(r.all_pass());
    const Report f = run_suite("functional-equation", default_grid(), opt);
    CHECK_FALSE(f.all_pass());
    for (const auto& v : f.records) CHECK(v.tol == 1e-30);
}

TEST_CASE("a failing case is recorded, not thrown") {
    GridSpec g = default_grid();
    // a negative d is rejected inside every evaluation
    g.s_points = {CNum(2.5)};
    g.d_points = {-1.0};
    const Report r = run_suite("theorem1", g);
    REQUIRE(r.summary.cases > 0);
    CHECK(r.summary.passes == 0);
    CHECK(r.records[0].notes.find("error") != std::string::npos);
}
