#include "confmap/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <type_traits>

#include "confmap/error.hpp"

namespace confmap {
namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

struct FftwBuffer {
  explicit FftwBuffer(std::size_t count)
      : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count))) {
    if (ptr == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* ptr;
};

int reduce(int k, int n) {
  const int r = k % n;
  return r < 0 ? r + n : r;
}

}  // namespace

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double RealFourier::operator()(double t) const {
  double sum = a0;
  const cplx step = std::polar(1.0, t);
  cplx e = step;
  for (std::size_t l = 0; l < cos_coeffs.size(); ++l) {
    sum += cos_coeffs[l] * e.real() + sin_coeffs[l] * e.imag();
    e *= step;
  }
  return sum;
}

std::vector<cplx> dft(std::span<const cplx> samples) {
  const int n = static_cast<int>(samples.size());
  FftwBuffer in(n), out(n);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, in.ptr, out.ptr, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter> guard(plan);
  for (int j = 0; j < n; ++j) {
    in.ptr[j][0] = samples[j].real();
    in.ptr[j][1] = samples[j].imag();
  }
  fftw_execute(plan);
  std::vector<cplx> result(n);
  for (int k = 0; k < n; ++k) result[k] = cplx(out.ptr[k][0], out.ptr[k][1]) / double(n);
  return result;
}

RealFourier analyze(std::span<const double> samples, int max_harmonic) {
  const int n = static_cast<int>(samples.size());
  if (max_harmonic < 0 || 2 * max_harmonic >= n) {
    throw Error(ErrorKind::Config, "fourier",
                "harmonic " + std::to_string(max_harmonic) + " not resolvable by " +
                    std::to_string(n) + " samples");
  }
  std::vector<double> in(samples.begin(), samples.end());
  FftwBuffer out(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in.data(), out.ptr, FFTW_ESTIMATE);
  }
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter> guard(plan);
  fftw_execute(plan);

  RealFourier series;
  series.a0 = out.ptr[0][0] / n;
  series.cos_coeffs.resize(max_harmonic);
  series.sin_coeffs.resize(max_harmonic);
  for (int l = 1; l <= max_harmonic; ++l) {
    series.cos_coeffs[l - 1] = 2.0 * out.ptr[l][0] / n;
    series.sin_coeffs[l - 1] = -2.0 * out.ptr[l][1] / n;
  }
  return series;
}

std::vector<double> synthesize(const RealFourier& series, int N) {
  std::vector<double> values(N);
  for (int j = 0; j < N; ++j) values[j] = series(kTwoPi * j / N);
  return values;
}

RealDft2d::RealDft2d(std::span<const double> values, int N)
    : n_(N), half_(N / 2 + 1), data_(static_cast<std::size_t>(N) * (N / 2 + 1)) {
  if (values.size() != static_cast<std::size_t>(N) * N) {
    throw Error(ErrorKind::Config, "fourier", "2-D transform expects an N x N array");
  }
  std::vector<double> in(values.begin(), values.end());
  FftwBuffer out(data_.size());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_2d(N, N, in.data(), out.ptr, FFTW_ESTIMATE);
  }
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter> guard(plan);
  fftw_execute(plan);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = cplx(out.ptr[i][0], out.ptr[i][1]);
}

cplx RealDft2d::operator()(int p, int q) const {
  p = reduce(p, n_);
  q = reduce(q, n_);
  if (q < half_) return data_[static_cast<std::size_t>(p) * half_ + q];
  // F(p, q) = conj F(-p, -q) for real input.
  return std::conj(data_[static_cast<std::size_t>(reduce(-p, n_)) * half_ + (n_ - q)]);
}

}  // namespace confmap
