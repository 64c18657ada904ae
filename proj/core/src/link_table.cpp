#include <algorithm>
#include <numeric>

#include "shp/errors.hpp"
#include "shp/linkfn.hpp"

namespace shp {

LinkTable::LinkTable(const LinkFunction& link, int n) : n_(n), name_(link.name()) {
  if (n < 1) throw ArgumentError("link table needs n >= 1");
  const std::size_t cells = static_cast<std::size_t>(n) * n;

  // Evaluate the upper triangle once; the lower triangle mirrors it.
  std::vector<LinkValue> grid;
  grid.reserve(cells);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      grid.push_back(j >= i ? link.eval(i, j, n) : grid[static_cast<std::size_t>(j - 1) * n + (i - 1)]);
    }
  }

  values_ = grid;
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());

  ids_.resize(cells);
  std::vector<std::int64_t> multiplicity(values_.size(), 0);
  for (std::size_t c = 0; c < cells; ++c) {
    const auto it = std::lower_bound(values_.begin(), values_.end(), grid[c]);
    ids_[c] = static_cast<std::int32_t>(it - values_.begin());
    ++multiplicity[ids_[c]];
  }
  alphan_ = *std::max_element(multiplicity.begin(), multiplicity.end());

  row_ids_.resize(cells);
  row_cols_.resize(cells);
  std::vector<std::int32_t> order(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    const std::size_t off = static_cast<std::size_t>(r) * n;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::int32_t a, std::int32_t b) { return ids_[off + a] < ids_[off + b]; });
    int run = 0;
    for (int k = 0; k < n; ++k) {
      row_cols_[off + k] = order[k];
      row_ids_[off + k] = ids_[off + order[k]];
      run = (k > 0 && row_ids_[off + k] == row_ids_[off + k - 1]) ? run + 1 : 1;
      delta_ = std::max(delta_, run);
    }
  }
}

std::span<const std::int32_t> LinkTable::columns(int row, std::int32_t value_id) const {
  const std::size_t off = static_cast<std::size_t>(row) * n_;
  const auto first = row_ids_.begin() + static_cast<std::ptrdiff_t>(off);
  const auto last = first + n_;
  const auto [lo, hi] = std::equal_range(first, last, value_id);
  return {row_cols_.data() + (lo - row_ids_.begin()), static_cast<std::size_t>(hi - lo)};
}

}  // namespace shp
