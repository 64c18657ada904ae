#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shp/circuits.hpp"
#include "shp/oracle.hpp"
#include "shp/spectral.hpp"
#include "shpcli/config.hpp"

namespace shp::cli {

struct RunOptions {
  int threads = 1;                    // speed only
  std::optional<std::uint64_t> seed;  // overrides master_seed
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  // verify-table2 tags: moments, ks, odd, bound, relation.
  std::string group = {};
};

/// What a command produced. Files are (name, content) pairs written under
/// the output directory by `run`.
struct CommandOutput {
  std::string command;
  Json config;  // effective config
  Json report;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, std::string>> files;

  bool all_pass() const;
};

CommandOutput cmd_spectrum(const Json& config, const RunOptions& options);
CommandOutput cmd_moments(const Json& config, const RunOptions& options);
CommandOutput cmd_words(const Json& config, const RunOptions& options);
CommandOutput cmd_pw(const Json& config, const RunOptions& options);
CommandOutput cmd_check(const Json& config, const RunOptions& options);
CommandOutput cmd_verify_table2(const Json& config, const RunOptions& options);

/// Dispatch by command name; throws ConfigError for an unknown name.
CommandOutput run_command(const std::string& name, const Json& config, const RunOptions& options);

enum class LimitLaw { Semicircle, Toeplitz, Hankel, ReverseCirculant, Unknown };
std::string to_string(LimitLaw law);

/// Limit of n^{-1/2} X (.) Y for the built-in pairs covered by the table of
/// known products; either order is accepted.
LimitLaw limit_law(const LinkFunction& x, const LinkFunction& y);

/// Target moments 1..h_max (h_max <= 6 except for the semicircle). Non-
/// semicircle laws are assembled from p-tables on the default ladders and
/// cached per process.
MomentSequence limit_moments(LimitLaw law, int h_max, const CountOptions& options = {});

/// Moment record {h, mean, variance, stderr, n, trials, seed, target, z}.
Json moment_record(const MomentEstimate& m, std::uint64_t seed, std::optional<double> target);
Json pair_report_json(const WordPairReport& r, bool joint);

/// `%.17g` rendering used by CSV outputs.
std::string format_double(double v);

/// Writes `content` to `path` through a temporary file and a rename.
void write_atomic(const std::string& path, const std::string& content);

/// Runs a command end to end: outputs and manifest.json under `out_dir`.
/// Returns the process exit code (0 iff every check passed).
int execute(const std::string& name, const Json& config, const RunOptions& options,
            const std::string& out_dir);

/// Entry point used by shpcli.
int main_entry(int argc, char** argv);

inline constexpr const char* kVersion = "0.3.0";

}  // namespace shp::cli
