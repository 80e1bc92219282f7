#pragma once

#include "expblowup/certifier.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace expblowup::cli {

enum class Format { json, csv, surface };

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_config = 2,
    exit_validation = 3,
    exit_reframe = 4,
    exit_integration = 5,
};

struct RunConfig {
    int n = 6;
    int m = 1;
    std::string lambda = "1";
    /// cosine_m1, cosine_m2 or file:<path>; empty picks the cosine data matching m.
    std::string initial;
    IntegratorOptions integrator;
    std::optional<double> epsilon_target;
    std::filesystem::path out_dir = ".";
    std::set<Format> emit{Format::json};
};

/// Parses "json,csv,surface". Throws InputError.
std::set<Format> parse_formats(const std::string& list);
/// Parses cosine_m1, cosine_m2 or file:<path>. Throws InputError.
InitialSpec parse_initial(const std::string& text);

/// Applies one key=value setting (keys as the long flags without dashes).
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);
/// One configuration per non-empty line of key=value pairs; '#' starts a comment.
std::vector<RunConfig> parse_sweep(std::istream& in, const RunConfig& defaults);

struct RunOutcome {
    int exit_code = exit_internal;
    RunConfig config;
    std::optional<BlowupCertificate> certificate;
    std::string message;
};

/// Runs one certification and writes the requested files; never throws.
RunOutcome execute(const RunConfig& config);

std::string summary_header();
std::string summary_row(const RunOutcome& outcome);

/// execute() plus a one-row summary table on `out` and errors on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Runs all configurations on up to `jobs` threads and prints one table
/// sorted by n. Exit code 0 iff every run succeeded.
int table_sweep(const std::vector<RunConfig>& configs, std::ostream& out, std::ostream& err, unsigned jobs = 0);

} // namespace expblowup::cli
