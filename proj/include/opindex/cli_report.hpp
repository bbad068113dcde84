#pragma once

#include "opindex/ab_lattice.hpp"
#include "opindex/toeplitz_hardy.hpp"

#include <cstdint>

namespace opindex {

struct RunConfig {
    int n = 2048;            // grid size cap for the discretized index fixtures
    double L = 16.0 * kPi;   // grid half-width
    int J = 32;              // lattice truncation halfwidth
    int P = 512;             // phi samples
    std::vector<double> eps_ladder = {1e-6, 1e-8};
    ShiftConvention convention = ShiftConvention::Paper;
    std::string only_prefix;  // run only fixtures whose name starts with this
    bool strict = false;      // flagged records fail the run
    int workers = 1;
    uint64_t seed = 0x5eed0161u;  // OPINDEX_SEED overrides

    void validate() const;
};

RunConfig config_from_env_and_json(const std::string& json_path = "");

enum class RecordStatus { Match, MatchUpToGlobalSign, Flagged, Error };

struct Record {
    std::string name;
    std::string citation;
    std::string expected;
    std::string computed;
    RecordStatus status = RecordStatus::Match;
    std::string route;  // winding | eps-rank | trace | SNF
    std::string detail;
};

struct Report {
    std::vector<Record> records;  // sorted by name
    std::string convention;
    std::string orientation;
    uint64_t seed = 0;
    int sign_mismatches = 0;
    int flagged = 0;
    int errors = 0;

    /// 0 iff no errors and (under strict) no flagged records.
    int exit_code(bool strict) const;
};

Report run_replication(const RunConfig& config);

/// Deterministic exports; timestamps and timings go to <stem>.meta.json only.
void export_report(const Report& report, const std::string& stem, const std::string& format);

const char* to_string(RecordStatus s);

}  // namespace opindex
