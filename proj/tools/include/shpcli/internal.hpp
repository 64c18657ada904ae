#pragma once

#include <cstdint>
#include <string>

#include "shp/circuits.hpp"
#include "shp/ensemble.hpp"
#include "shpcli/commands.hpp"

namespace shp::cli {

Json containment_json(const ContainmentReport& r);

namespace detail {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// master_seed from the config, replaced by --seed when given.
std::uint64_t read_seed(ConfigReader& cfg, const RunOptions& options);

/// link_x, link_y, dist (shared default), dist_x, dist_y, n, trials, master_seed.
ProductSpec read_product(ConfigReader& cfg, const RunOptions& options,
                         const std::string& default_x, const std::string& default_y,
                         int default_n, int default_trials, int min_trials);

CountOptions count_options(const RunOptions& options);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace detail
}  // namespace shp::cli
