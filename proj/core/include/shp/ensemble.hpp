#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "shp/linkfn.hpp"

namespace shp {

/// Mean-zero, unit-variance input laws.
enum class Distribution : std::uint8_t {
  Rademacher,  // +-1 with probability 1/2
  Uniform,     // uniform on [-sqrt(3), sqrt(3)]
  Gaussian,    // standard normal
};

std::string to_string(Distribution d);
/// Accepts `rademacher`, `uniform`, `gaussian`.
Distribution parse_distribution(std::string_view name);

struct Provenance {
  std::string link;
  std::string distribution;
  std::uint64_t seed = 0;
};

/// Dense symmetric matrix built from a link (or a product of two).
class MatrixRealization {
 public:
  MatrixRealization() = default;
  MatrixRealization(Eigen::MatrixXd entries, bool scaled, Provenance provenance = {},
                    std::int64_t draws = 0);

  int n() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  bool scaled() const { return scaled_; }
  const Provenance& provenance() const { return provenance_; }
  /// Number of input variables drawn to build the matrix.
  std::int64_t draws() const { return draws_; }

 private:
  Eigen::MatrixXd entries_;
  bool scaled_ = false;
  Provenance provenance_;
  std::int64_t draws_ = 0;
};

/// Unscaled realization: one draw per distinct link value, consumed in sorted
/// value order, placed at every cell carrying that value.
MatrixRealization realize(const LinkFunction& link, Distribution dist, int n, std::uint64_t seed);
/// Same, reusing a prebuilt table.
MatrixRealization realize(const LinkTable& table, Distribution dist, std::uint64_t seed);

/// Entrywise product of two unscaled realizations of equal size.
MatrixRealization schur_product(const MatrixRealization& a, const MatrixRealization& b);

/// Multiplies by n^{-1/2}. Throws StateError if already scaled.
MatrixRealization scale(MatrixRealization a);

/// Writes the entries row-major with 17 significant digits.
void write_csv(const MatrixRealization& a, std::ostream& out);

enum class StreamRole : std::uint64_t { X = 0x58, Y = 0x59 };

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Child seed for one input stream:
///   mix64(mix64(mix64(master) ^ role) ^ trial)
/// with role = 0x58 ('X') or 0x59 ('Y').
std::uint64_t derive_seed(std::uint64_t master, StreamRole role, std::uint64_t trial);

struct ProductSpec {
  LinkFunction link_x = LinkFunction::wigner();
  LinkFunction link_y = LinkFunction::wigner();
  Distribution dist_x = Distribution::Rademacher;
  Distribution dist_y = Distribution::Rademacher;
  int n = 0;
  std::uint64_t master_seed = 0;
  int trials = 1;
  /// Diagnostic: feed Y with the X stream seed, so X and Y share inputs.
  bool shared_inputs = false;
};

/// Scaled n^{-1/2} X (.) Y for one trial, using prebuilt tables for the two
/// links.
MatrixRealization realize_product(const ProductSpec& spec, const LinkTable& table_x,
                                  const LinkTable& table_y, std::uint64_t trial);
MatrixRealization realize_product(const ProductSpec& spec, std::uint64_t trial);

}  // namespace shp
