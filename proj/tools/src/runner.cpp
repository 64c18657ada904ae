#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "shpcli/commands.hpp"
#include "shpcli/internal.hpp"

namespace shp::cli {

namespace fs = std::filesystem;

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << content;
    if (!f.flush()) throw std::runtime_error("write to " + tmp + " failed");
  }
  fs::rename(tmp, path);
}

int execute(const std::string& name, const Json& config, const RunOptions& options,
            const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  CommandOutput out = run_command(name, config, options);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  fs::create_directories(out_dir);
  Json files = Json::array();
  for (const auto& [file, content] : out.files) {
    write_atomic((fs::path(out_dir) / file).string(), content);
    files.push_back(file);
  }
  Json checks = Json::array();
  std::size_t passed = 0;
  for (const auto& c : out.checks) {
    checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"value", c.detail}});
    passed += c.pass;
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << '\n';
  }
  Json manifest;
  manifest["command"] = out.command;
  manifest["version"] = kVersion;
  manifest["config_hash"] = config_hash(out.config);
  manifest["config"] = out.config;
  manifest["wall_time_seconds"] = wall;
  manifest["checks"] = checks;
  manifest["files"] = files;
  manifest["pass"] = out.all_pass();
  write_atomic((fs::path(out_dir) / "manifest.json").string(), detail::dump(manifest));
  std::cout << name << ": " << passed << "/" << out.checks.size() << " checks passed, outputs in "
            << out_dir << '\n';
  return out.all_pass() ? 0 : 1;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Schur-Hadamard products of patterned random matrices", "shpcli"};
  app.set_version_flag("--version", kVersion);
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int threads = 1;
  app.add_option("--config", config_path, "JSON config for the command")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "master seed, overrides the config");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (speed only)")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  const std::pair<const char*, const char*> commands[] = {
      {"spectrum", "eigenvalues, histogram and KS distance of one product"},
      {"moments", "Monte Carlo moment table with limit targets"},
      {"words", "pair-matched word listings and counts"},
      {"pw", "word limits p(w) or joint p(w, w') by exact circuit counts"},
      {"check", "compatibility, leads-to, implies and invariance checks"},
      {"verify-table2", "full Monte Carlo and combinatorial verification suite"},
  };
  for (const auto& [cmd, help] : commands) app.add_subcommand(cmd, help)->fallthrough();
  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  const std::string name = app.get_subcommands().front()->get_name();

  RunOptions options;
  options.threads = threads;
  if (seed_opt->count() > 0) options.seed = seed;
  try {
    Json config = Json::object();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      try {
        config = Json::parse(f);
      } catch (const Json::parse_error& e) {
        throw ConfigError("config file '" + config_path + "': " + e.what());
      }
    }
    return execute(name, config, options, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "shpcli " << name << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "shpcli " << name << ": " << e.what() << '\n';
    return 3;
  }
}

}  // namespace shp::cli
