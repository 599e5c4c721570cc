#pragma once

#include <cstdint>
#include <vector>

namespace ordet {

/// Probability mass function of the active sensor count on the contiguous
/// range [first, first + mass.size()).
struct SizePmf {
  std::int64_t first = 0;
  std::vector<double> mass;

  double operator()(std::int64_t n) const {
    if (n < first || n >= first + static_cast<std::int64_t>(mass.size())) return 0.0;
    return mass[static_cast<std::size_t>(n - first)];
  }
  std::int64_t last() const { return first + static_cast<std::int64_t>(mass.size()) - 1; }
  double total() const {
    double s = 0.0;
    for (double m : mass) s += m;
    return s;
  }
  double mean() const {
    double s = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) s += mass[i] * static_cast<double>(first + static_cast<std::int64_t>(i));
    return s;
  }

  static SizePmf point_mass(std::int64_t n) { return SizePmf{n, {1.0}}; }
};

}  // namespace ordet
