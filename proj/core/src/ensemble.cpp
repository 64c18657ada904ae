#include "shp/ensemble.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <vector>

#include "shp/errors.hpp"

namespace shp {

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::Rademacher: return "rademacher";
    case Distribution::Uniform: return "uniform";
    case Distribution::Gaussian: return "gaussian";
  }
  return "unknown";
}

Distribution parse_distribution(std::string_view name) {
  if (name == "rademacher") return Distribution::Rademacher;
  if (name == "uniform") return Distribution::Uniform;
  if (name == "gaussian") return Distribution::Gaussian;
  throw ArgumentError("unknown distribution '" + std::string(name) + "'");
}

MatrixRealization::MatrixRealization(Eigen::MatrixXd entries, bool scaled, Provenance provenance,
                                     std::int64_t draws)
    : entries_(std::move(entries)),
      scaled_(scaled),
      provenance_(std::move(provenance)),
      draws_(draws) {
  if (entries_.rows() != entries_.cols()) throw ArgumentError("realization must be square");
}

namespace {

std::vector<double> draw_inputs(Distribution dist, std::int64_t count, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<double> out(static_cast<std::size_t>(count));
  switch (dist) {
    case Distribution::Rademacher: {
      std::bernoulli_distribution coin(0.5);
      for (auto& x : out) x = coin(engine) ? 1.0 : -1.0;
      break;
    }
    case Distribution::Uniform: {
      const double half_width = std::sqrt(3.0);
      std::uniform_real_distribution<double> u(-half_width, half_width);
      for (auto& x : out) x = u(engine);
      break;
    }
    case Distribution::Gaussian: {
      std::normal_distribution<double> g(0.0, 1.0);
      for (auto& x : out) x = g(engine);
      break;
    }
  }
  return out;
}

}  // namespace

MatrixRealization realize(const LinkTable& table, Distribution dist, std::uint64_t seed) {
  const int n = table.n();
  const std::vector<double> inputs = draw_inputs(dist, table.value_count(), seed);
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m(i, j) = inputs[table.id(i, j)];
  }
  return MatrixRealization(std::move(m), false, Provenance{table.link_name(), to_string(dist), seed},
                           table.value_count());
}

MatrixRealization realize(const LinkFunction& link, Distribution dist, int n, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("realize needs n >= 1");
  return realize(LinkTable(link, n), dist, seed);
}

MatrixRealization schur_product(const MatrixRealization& a, const MatrixRealization& b) {
  if (a.n() != b.n()) {
    throw ArgumentError("schur_product dimension mismatch: " + std::to_string(a.n()) + " vs " +
                        std::to_string(b.n()));
  }
  if (a.scaled() || b.scaled()) throw StateError("schur_product expects unscaled factors");
  Provenance p{a.provenance().link + "*" + b.provenance().link,
               a.provenance().distribution + "*" + b.provenance().distribution,
               a.provenance().seed};
  return MatrixRealization(a.entries().cwiseProduct(b.entries()), false, std::move(p),
                           a.draws() + b.draws());
}

MatrixRealization scale(MatrixRealization a) {
  if (a.scaled()) throw StateError("matrix is already scaled");
  const double factor = 1.0 / std::sqrt(static_cast<double>(a.n()));
  Eigen::MatrixXd scaled = a.entries() * factor;
  return MatrixRealization(std::move(scaled), true, a.provenance(), a.draws());
}

void write_csv(const MatrixRealization& a, std::ostream& out) {
  char buf[32];
  for (int i = 0; i < a.n(); ++i) {
    for (int j = 0; j < a.n(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", a(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, StreamRole role, std::uint64_t trial) {
  return mix64(mix64(mix64(master) ^ static_cast<std::uint64_t>(role)) ^ trial);
}

MatrixRealization realize_product(const ProductSpec& spec, const LinkTable& table_x,
                                  const LinkTable& table_y, std::uint64_t trial) {
  if (table_x.n() != spec.n || table_y.n() != spec.n) {
    throw ArgumentError("link tables do not match the product dimension");
  }
  const std::uint64_t seed_x = derive_seed(spec.master_seed, StreamRole::X, trial);
  const std::uint64_t seed_y =
      spec.shared_inputs ? seed_x : derive_seed(spec.master_seed, StreamRole::Y, trial);
  const MatrixRealization x = realize(table_x, spec.dist_x, seed_x);
  const MatrixRealization y = realize(table_y, spec.dist_y, seed_y);
  return scale(schur_product(x, y));
}

MatrixRealization realize_product(const ProductSpec& spec, std::uint64_t trial) {
  return realize_product(spec, LinkTable(spec.link_x, spec.n), LinkTable(spec.link_y, spec.n),
                         trial);
}

}  // namespace shp
