#pragma once

#include <span>
#include <vector>

#include "confmap/boundary.hpp"

namespace confmap {

/// Real trigonometric series a0 + sum_{l>=1} (a_l cos lt + b_l sin lt).
/// cos_coeffs[l-1] = a_l, sin_coeffs[l-1] = b_l.
struct RealFourier {
  double a0 = 0.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;

  int degree() const noexcept { return static_cast<int>(cos_coeffs.size()); }
  double operator()(double t) const;
};

/// Discrete Fourier analysis of samples g(2*pi*j/N), harmonics 1..max_harmonic.
/// Requires max_harmonic < N/2.
RealFourier analyze(std::span<const double> samples, int max_harmonic);

/// Samples of the series at 2*pi*j/N, j = 0..N-1.
std::vector<double> synthesize(const RealFourier& series, int N);

/// Normalised forward DFT: c_k = (1/N) sum_j x_j exp(-2*pi*i*j*k/N).
std::vector<cplx> dft(std::span<const cplx> samples);

/// Unnormalised 2-D real-to-complex DFT of a row-major N x N array:
/// F(p, q) = sum_{a,b} x[a*N + b] exp(-2*pi*i*(p*a + q*b)/N).
/// Only q in [0, N/2] is stored; the rest follows from conjugate symmetry.
class RealDft2d {
 public:
  RealDft2d(std::span<const double> values, int N);

  int size() const noexcept { return n_; }
  /// F(p, q) for any integers p, q (reduced mod N).
  cplx operator()(int p, int q) const;

 private:
  int n_;
  int half_;
  std::vector<cplx> data_;  // N x (N/2 + 1)
};

bool is_power_of_two(int n);

}  // namespace confmap
