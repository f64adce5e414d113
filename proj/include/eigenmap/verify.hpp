#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "eigenmap/catalog.hpp"
#include "eigenmap/check.hpp"

namespace eigenmap {

enum class OutputFormat { Csv, Json };

struct RunConfig {
    std::string example_id;
    std::string suite_id;
    int samples = 20;
    std::uint64_t seed = 0;
    std::map<std::string, double> tol_overrides;  // keyed by check id without its [..] suffix
    double fd_step = 1e-5;
    OutputFormat output_format = OutputFormat::Csv;
    std::string output_path;  // empty means stdout

    /// Throws ConfigError.
    void validate() const;
};

struct RunSummary {
    int total = 0;
    int passed = 0;
    int failed = 0;
    double max_abs_err = 0.0;
    double wall_ms = 0.0;
};

struct RunResult {
    std::vector<CheckRecord> records;
    RunSummary summary;
};

/// Suite ids in stable order.
const std::vector<std::string>& suite_ids();

/// Throws UnknownExample, UnknownSuite, or ConfigError (also when the suite
/// does not apply to the example).
RunResult run_suite(const RunConfig& config);

/// Re-verifies the entry's declared flags on 50 seeded samples; throws
/// HypothesisViolated naming the first failing record.
const CatalogEntry& load_verified(std::string_view id);

/// example,suite,check_id,point,lhs,rhs,abs_err,rel_err,tolerance,pass
std::string to_csv(const std::vector<CheckRecord>& records);
std::string to_json(const RunResult& result);

/// 0 when every record passes, 1 otherwise.
int exit_code(const RunResult& result);

/// Applies `key=value` lines (# comments, blank lines ignored) onto `config`.
/// Keys: example, suite, samples, seed, fd_step, format, out, tol.<check_id>.
/// Throws ConfigError.
void apply_config_text(RunConfig& config, std::string_view text);
void apply_config_file(RunConfig& config, const std::string& path);

}  // namespace eigenmap
