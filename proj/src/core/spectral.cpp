#include "cwom/core/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace cwom {
namespace {

// fftw_plan_* is not thread-safe; fftw_execute_dft on distinct buffers is.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  const PlanPair& get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.forward = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, flags);
    fftw_free(in);
    fftw_free(out);
    return plans_.emplace(n, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void execute(fftw_plan plan, const ComplexField& in, ComplexField& out) {
  // std::complex<double> is layout-compatible with fftw_complex.
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

ComplexField fft(const ComplexField& f) {
  ComplexField out(f.size());
  execute(cache().get(f.size()).forward, f, out);
  return out;
}

ComplexField ifft(const ComplexField& F) {
  ComplexField out(F.size());
  execute(cache().get(F.size()).backward, F, out);
  const double inv = 1.0 / static_cast<double>(F.size());
  for (auto& v : out) v *= inv;
  return out;
}

ComplexField apply_multiplier(const ComplexField& field, const Grid1D& grid,
                              const std::function<Complex(double)>& m) {
  if (field.size() != grid.size())
    throw std::invalid_argument("apply_multiplier: field length does not match grid");
  ComplexField F = fft(field);
  for (std::size_t i = 0; i < F.size(); ++i) F[i] *= m(grid.k(i));
  return ifft(F);
}

ComplexField spectral_derivative(const ComplexField& field, const Grid1D& grid, int order,
                                 double k_shift) {
  if (order < 1 || order > 2)
    throw std::invalid_argument("spectral_derivative: order must be 1 or 2");
  if (field.size() != grid.size())
    throw std::invalid_argument("spectral_derivative: field length does not match grid");
  ComplexField F = fft(field);
  const std::size_t nyquist = grid.size() / 2;
  for (std::size_t i = 0; i < F.size(); ++i) {
    double k = grid.k(i);
    if (i == nyquist && order % 2 == 1 && k_shift == 0.0) k = 0.0;
    const Complex ik(0.0, k + k_shift);
    F[i] *= (order == 1) ? ik : ik * ik;
  }
  return ifft(F);
}

ComplexField reversed(const ComplexField& f) {
  const std::size_t n = f.size();
  ComplexField r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = f[(n - i) % n];
  return r;
}

}  // namespace cwom
