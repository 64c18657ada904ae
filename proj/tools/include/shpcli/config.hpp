#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "shp/ensemble.hpp"
#include "shp/errors.hpp"
#include "shp/linkfn.hpp"

namespace shp::cli {

// Insertion-ordered so that reports serialize identically on every run.
using Json = nlohmann::ordered_json;

/// Bad or unknown configuration entry. The message names the key and value.
class ConfigError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// Typed view of a command's JSON config. Every value read (including
/// defaults) is recorded in `effective()`, which is what gets hashed and
/// echoed in the manifest.
class ConfigReader {
 public:
  ConfigReader(Json raw, std::string command);

  bool has(const std::string& key) const { return raw_.contains(key); }

  std::int64_t get_int(const std::string& key, std::int64_t fallback, std::int64_t lo,
                       std::int64_t hi);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
  double get_double(const std::string& key, double fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::string get_string(const std::string& key, const std::string& fallback);
  std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback, int lo,
                                int hi);
  /// Unparsed value (marked as read); the caller records the effective form.
  const Json* get_raw(const std::string& key) { return lookup(key); }
  LinkFunction get_link(const std::string& key, const std::string& fallback);
  Distribution get_distribution(const std::string& key, const std::string& fallback);

  /// Raises ConfigError for any key in the input that was never read.
  void finish() const;

  const Json& effective() const { return effective_; }
  /// Records a value supplied outside the config file, e.g. a CLI flag.
  void set_effective(const std::string& key, Json value) { effective_[key] = std::move(value); }
  const std::string& command() const { return command_; }

  [[noreturn]] void fail(const std::string& key, const std::string& why) const;

 private:
  const Json* lookup(const std::string& key);

  Json raw_;
  Json effective_ = Json::object();
  std::string command_;
  std::set<std::string> read_;
};

/// 64-bit FNV-1a of the compact dump of `config`, as 16 hex digits.
std::string config_hash(const Json& config);

}  // namespace shp::cli
