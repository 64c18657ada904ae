#include "shpcli/config.hpp"

#include <cmath>
#include <cstdio>

namespace shp::cli {

ConfigReader::ConfigReader(Json raw, std::string command)
    : raw_(std::move(raw)), command_(std::move(command)) {
  if (raw_.is_null()) raw_ = Json::object();
  if (!raw_.is_object()) throw ConfigError("config for '" + command_ + "' must be a JSON object");
}

void ConfigReader::fail(const std::string& key, const std::string& why) const {
  std::string shown = raw_.contains(key) ? raw_.at(key).dump() : "<missing>";
  throw ConfigError("config key '" + key + "' = " + shown + ": " + why);
}

const Json* ConfigReader::lookup(const std::string& key) {
  read_.insert(key);
  auto it = raw_.find(key);
  return it == raw_.end() ? nullptr : &*it;
}

std::int64_t ConfigReader::get_int(const std::string& key, std::int64_t fallback, std::int64_t lo,
                                   std::int64_t hi) {
  std::int64_t v = fallback;
  if (const Json* j = lookup(key)) {
    if (!j->is_number_integer()) fail(key, "expected an integer");
    v = j->get<std::int64_t>();
  }
  if (v < lo || v > hi) {
    fail(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  effective_[key] = v;
  return v;
}

std::uint64_t ConfigReader::get_u64(const std::string& key, std::uint64_t fallback) {
  std::uint64_t v = fallback;
  if (const Json* j = lookup(key)) {
    if (j->is_number_unsigned()) {
      v = j->get<std::uint64_t>();
    } else if (j->is_number_integer() && j->get<std::int64_t>() >= 0) {
      v = static_cast<std::uint64_t>(j->get<std::int64_t>());
    } else {
      fail(key, "expected a non-negative 64-bit integer");
    }
  }
  effective_[key] = v;
  return v;
}

double ConfigReader::get_double(const std::string& key, double fallback) {
  double v = fallback;
  if (const Json* j = lookup(key)) {
    if (!j->is_number()) fail(key, "expected a number");
    v = j->get<double>();
    if (!std::isfinite(v)) fail(key, "expected a finite number");
  }
  effective_[key] = v;
  return v;
}

bool ConfigReader::get_bool(const std::string& key, bool fallback) {
  bool v = fallback;
  if (const Json* j = lookup(key)) {
    if (!j->is_boolean()) fail(key, "expected true or false");
    v = j->get<bool>();
  }
  effective_[key] = v;
  return v;
}

std::string ConfigReader::get_string(const std::string& key, const std::string& fallback) {
  std::string v = fallback;
  if (const Json* j = lookup(key)) {
    if (!j->is_string()) fail(key, "expected a string");
    v = j->get<std::string>();
  }
  effective_[key] = v;
  return v;
}

std::vector<int> ConfigReader::get_int_list(const std::string& key,
                                            const std::vector<int>& fallback, int lo, int hi) {
  std::vector<int> v = fallback;
  if (const Json* j = lookup(key)) {
    if (!j->is_array() || j->empty()) fail(key, "expected a nonempty array of integers");
    v.clear();
    for (const auto& e : *j) {
      if (!e.is_number_integer()) fail(key, "expected a nonempty array of integers");
      v.push_back(e.get<int>());
    }
  }
  for (int x : v) {
    if (x < lo || x > hi) {
      fail(key, "entries must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
  effective_[key] = v;
  return v;
}

LinkFunction ConfigReader::get_link(const std::string& key, const std::string& fallback) {
  const std::string name = get_string(key, fallback);
  try {
    LinkFunction link = parse_link(name);
    effective_[key] = link.name();
    return link;
  } catch (const ArgumentError& e) {
    throw ConfigError("config key '" + key + "' = \"" + name + "\": " + e.what());
  }
}

Distribution ConfigReader::get_distribution(const std::string& key, const std::string& fallback) {
  const std::string name = get_string(key, fallback);
  try {
    return parse_distribution(name);
  } catch (const ArgumentError& e) {
    throw ConfigError("config key '" + key + "' = \"" + name + "\": " + e.what());
  }
}

void ConfigReader::finish() const {
  for (const auto& [key, value] : raw_.items()) {
    if (!read_.count(key)) {
      throw ConfigError("config key '" + key + "' = " + value.dump() + ": not used by '" +
                        command_ + "'");
    }
  }
}

std::string config_hash(const Json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace shp::cli
