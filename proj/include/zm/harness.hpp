#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zm/blocks.hpp"
#include "zm/types.hpp"

namespace zm {

struct GridSpec {
    std::vector<CNum> s_points;
    std::vector<CNum> a_points;
    std::vector<CNum> b_points;
    std::vector<CNum> c_points;
    std::vector<double> d_points;
    // complex (a, b) pairs for the suites that leave the real line
    std::vector<std::pair<CNum, CNum>> complex_ab;
    double exclusion_radius = 0.05;
    std::uint64_t seed = 20240611;
    int random_points = 100;
};

GridSpec default_grid();

struct VerificationRecord {
    std::string suite;
    std::size_t index = 0;
    std::string check;
    IdentityCase cs;
    int k = 0;
    CNum lhs{}, rhs{};
    double abs_resid = 0.0;
    double rel_resid = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string notes;
};

// rel_resid = abs_resid / max(|lhs|, |rhs|); pass <=> (|lhs| < 1 ? abs_resid : rel_resid) <= tol
void finish_record(VerificationRecord& r);

struct SuiteSummary {
    std::size_t cases = 0;
    std::size_t passes = 0;
    double max_rel_resid = 0.0;
    std::optional<double> seconds;
};

struct Report {
    std::string suite;
    SuiteSummary summary;
    std::vector<VerificationRecord> records;
    bool all_pass() const { return summary.passes == summary.cases; }
};

struct RunOptions {
    // <= 0 keeps each check's own tolerance; inequality and ratio checks always keep theirs
    double tol = 0.0;
    int threads = 1;
    std::int64_t max_terms = 1000000;
    bool timing = false;
};

struct SuiteInfo {
    std::string id;
    std::string summary;
};
const std::vector<SuiteInfo>& suite_list();

// unknown ids raise a usage error; a failing case never aborts the run
Report run_suite(const std::string& id, const GridSpec& grid, const RunOptions& opt = {});

enum class Format { json, csv, plain };
Format parse_format(const std::string& name);

void emit(const Report& r, Format f, std::ostream& out);
std::string emit_string(const Report& r, Format f);
// inverse of the JSON emitter
Report parse_report_json(const std::string& text);

// "1.5", "2i", "-i", "1+2i", "-0.5-1e-3i"; anything else is a usage error
CNum parse_complex(const std::string& text);

}  // namespace zm
