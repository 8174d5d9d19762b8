#include "ghostcs/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ghostcs/phantoms.hpp"

namespace ghostcs {

namespace {

std::size_t count_ones(const Image& mask) {
  return static_cast<std::size_t>(
      std::count_if(mask.begin(), mask.end(), [](double v) { return v != 0.0; }));
}

}  // namespace

std::size_t RegionMasks::bright_count() const noexcept { return count_ones(bright); }
std::size_t RegionMasks::dark_count() const noexcept { return count_ones(dark); }

void RegionMasks::validate() const {
  require_same_shape(bright, dark, "RegionMasks");
  if (!is_binary(bright) || !is_binary(dark)) {
    throw ParameterError("region masks must be binary");
  }
  for (std::size_t i = 0; i < bright.size(); ++i) {
    if (bright[i] != 0.0 && dark[i] != 0.0) {
      throw ParameterError("bright and dark masks overlap");
    }
  }
  if (bright_count() < 2 || dark_count() < 2) {
    throw ParameterError("bright and dark masks need at least 2 pixels each");
  }
}

double snr(const Image& image, const RegionMasks& masks) {
  masks.validate();
  require_same_shape(image, masks.bright, "snr");
  double bright_sum = 0.0;
  double dark_sum = 0.0;
  const std::size_t bright_n = masks.bright_count();
  const std::size_t dark_n = masks.dark_count();
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (masks.bright[i] != 0.0) bright_sum += image[i];
    if (masks.dark[i] != 0.0) dark_sum += image[i];
  }
  const double bright_mean = bright_sum / static_cast<double>(bright_n);
  const double dark_mean = dark_sum / static_cast<double>(dark_n);
  double sq = 0.0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (masks.dark[i] != 0.0) sq += (image[i] - dark_mean) * (image[i] - dark_mean);
  }
  const double dark_std = std::sqrt(sq / static_cast<double>(dark_n - 1));
  if (!(dark_std > 0.0)) {
    throw DegenerateInputError("snr: dark region has zero standard deviation");
  }
  return (bright_mean - dark_mean) / dark_std;
}

Image normalize_affine(const Image& image) {
  const auto [lo, hi] = std::minmax_element(image.begin(), image.end());
  Image out(image.rows(), image.cols(), 0.5);
  if (!(*hi > *lo)) return out;
  const double span = *hi - *lo;
  const double low = *lo;
  for (std::size_t i = 0; i < image.size(); ++i) out[i] = (image[i] - low) / span;
  return out;
}

double mse(const Image& recon, const Image& reference) {
  require_same_shape(recon, reference, "mse");
  const Image normalized = normalize_affine(recon);
  double sum = 0.0;
  for (std::size_t i = 0; i < normalized.size(); ++i) {
    const double d = normalized[i] - reference[i];
    sum += d * d;
  }
  return sum / static_cast<double>(normalized.size());
}

Image erode4(const Image& mask) {
  Image out(mask.rows(), mask.cols(), 0.0);
  const std::size_t rows = mask.rows();
  const std::size_t cols = mask.cols();
  auto on = [&](long r, long c) {
    if (r < 0 || c < 0 || r >= static_cast<long>(rows) || c >= static_cast<long>(cols)) {
      return true;
    }
    return mask(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) != 0.0;
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const long lr = static_cast<long>(r);
      const long lc = static_cast<long>(c);
      if (on(lr, lc) && on(lr - 1, lc) && on(lr + 1, lc) && on(lr, lc - 1) &&
          on(lr, lc + 1)) {
        out(r, c) = 1.0;
      }
    }
  }
  return out;
}

RegionMasks auto_masks(const Image& reference, std::size_t erode_px) {
  if (!is_binary(reference)) {
    throw ParameterError("auto_masks: reference must be binary");
  }
  RegionMasks masks{reference, Image(reference.rows(), reference.cols())};
  for (std::size_t i = 0; i < reference.size(); ++i) masks.dark[i] = 1.0 - reference[i];
  for (std::size_t k = 0; k < erode_px; ++k) {
    masks.bright = erode4(masks.bright);
    masks.dark = erode4(masks.dark);
  }
  if (masks.bright_count() < 2 || masks.dark_count() < 2) {
    throw ParameterError("auto_masks: erosion by " + std::to_string(erode_px) +
                         " px empties a region");
  }
  return masks;
}

}  // namespace ghostcs
