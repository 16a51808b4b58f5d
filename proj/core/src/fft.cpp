#include "trapexp/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "trapexp/error.hpp"

namespace trapexp {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FourierTransform::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  fftw_complex* scratch = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (scratch) fftw_free(scratch);
  }
};

FourierTransform::FourierTransform(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
  std::lock_guard lock(planner_mutex());
  const int len = static_cast<int>(n);
  plans_->scratch = fftw_alloc_complex(n);
  plans_->forward =
      fftw_plan_dft_1d(len, plans_->scratch, plans_->scratch, FFTW_FORWARD, FFTW_ESTIMATE);
  plans_->backward =
      fftw_plan_dft_1d(len, plans_->scratch, plans_->scratch, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plans_->forward || !plans_->backward) throw Error("FFTW planning failed");
}

FourierTransform::~FourierTransform() = default;
FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept = default;

void FourierTransform::forward(std::span<Complex> data) const {
  if (data.size() != n_) throw ContractError("FFT length mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->forward, p, p);
}

void FourierTransform::inverse(std::span<Complex> data) const {
  if (data.size() != n_) throw ContractError("FFT length mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plans_->backward, p, p);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : data) v *= scale;
}

std::vector<Complex> momentum_apply(const WaveFunction& psi) {
  FourierTransform fft(psi.grid.n_points);
  std::vector<Complex> work = psi.amplitudes;
  fft.forward(work);
  const auto k = psi.grid.wavenumbers();
  for (std::size_t j = 0; j < work.size(); ++j) work[j] *= k[j];
  fft.inverse(work);
  return work;
}

}  // namespace trapexp
