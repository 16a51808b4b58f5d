#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "trapexp/grid.hpp"

namespace trapexp {

/// In-place complex FFT of fixed length backed by FFTW. Plans are created
/// under a global lock; execution on distinct objects is thread-safe.
/// inverse() includes the 1/n factor.
class FourierTransform {
 public:
  explicit FourierTransform(std::size_t n);
  ~FourierTransform();
  FourierTransform(FourierTransform&&) noexcept;
  FourierTransform& operator=(FourierTransform&&) noexcept;
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  std::size_t size() const noexcept { return n_; }
  void forward(std::span<Complex> data) const;
  void inverse(std::span<Complex> data) const;

 private:
  struct Plans;
  std::size_t n_ = 0;
  std::unique_ptr<Plans> plans_;
};

/// -i d/dx psi evaluated spectrally.
std::vector<Complex> momentum_apply(const WaveFunction& psi);

}  // namespace trapexp
