#include "ghostcs/grid.hpp"

#include <algorithm>
#include <cmath>

namespace ghostcs {

bool all_finite(std::span<const double> values) noexcept {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

bool all_finite(std::span<const std::complex<double>> values) noexcept {
  return std::all_of(values.begin(), values.end(), [](const std::complex<double>& v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

}  // namespace ghostcs
