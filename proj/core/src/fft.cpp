#include "ghostcs/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace ghostcs {

namespace {

// FFTW planning is not thread-safe; execution with new-array is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  Plan(std::size_t rows, std::size_t cols, FftDirection direction)
      : size_(rows * cols) {
    buffer_ = fftw_alloc_complex(size_);
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), buffer_,
                             buffer_,
                             direction == FftDirection::Forward ? FFTW_FORWARD
                                                                : FFTW_BACKWARD,
                             FFTW_ESTIMATE);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(buffer_);
  }

  void execute(std::span<std::complex<double>> data) {
    std::memcpy(buffer_, data.data(), size_ * sizeof(fftw_complex));
    fftw_execute(plan_);
    std::memcpy(static_cast<void*>(data.data()), buffer_, size_ * sizeof(fftw_complex));
  }

 private:
  std::size_t size_;
  fftw_complex* buffer_ = nullptr;
  fftw_plan plan_ = nullptr;
};

Plan& cached_plan(std::size_t rows, std::size_t cols, FftDirection direction) {
  thread_local std::map<std::tuple<std::size_t, std::size_t, FftDirection>, Plan> cache;
  const auto key = std::make_tuple(rows, cols, direction);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache
             .emplace(std::piecewise_construct, std::forward_as_tuple(key),
                      std::forward_as_tuple(rows, cols, direction))
             .first;
  }
  return it->second;
}

}  // namespace

void fft2_inplace(std::span<std::complex<double>> data, std::size_t rows,
                  std::size_t cols, FftDirection direction) {
  if (rows == 0 || cols == 0 || data.size() != rows * cols) {
    throw ParameterError("fft2: buffer size does not match grid shape");
  }
  cached_plan(rows, cols, direction).execute(data);
}

ComplexField fft2(const ComplexField& field) {
  ComplexField out = field;
  fft2_inplace(out.values(), out.rows(), out.cols(), FftDirection::Forward);
  return out;
}

ComplexField ifft2(const ComplexField& spectrum) {
  ComplexField out = spectrum;
  fft2_inplace(out.values(), out.rows(), out.cols(), FftDirection::Inverse);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return out;
}

long fft_bin(std::size_t k, std::size_t n) noexcept {
  const auto sk = static_cast<long>(k);
  const auto sn = static_cast<long>(n);
  return 2 * sk < sn ? sk : sk - sn;
}

double fft_frequency(std::size_t k, std::size_t n) noexcept {
  return static_cast<double>(fft_bin(k, n)) / static_cast<double>(n);
}

}  // namespace ghostcs
