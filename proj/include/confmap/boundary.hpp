#pragma once

#include <complex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace confmap {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Representative of t modulo 2*pi in [0, 2*pi).
double wrap_parameter(double t);

/// Signed offset t - t0 reduced to [-pi, pi).
double parameter_offset(double t, double t0);

/// Corner of the boundary at parameter t0 with interior angle lambda * pi.
struct AnglePoint {
  double t0 = 0.0;
  double lambda = 0.5;
};

/// Closed curve z0(t) = sum_{k=-m}^{n} d_k exp(i k t).
///
/// Immutable after construction. The constructor only checks the shape of the
/// coefficient table; geometric admissibility (simple, counterclockwise
/// around the origin, non-vanishing speed) is checked by validate_admissible.
class TrigBoundary {
 public:
  /// coeffs[k + m] holds d_k for k in [-m, n].
  TrigBoundary(int m, int n, std::vector<cplx> coeffs);

  /// Builds from sparse (k, d_k) terms; m and n are the extents of the terms.
  static TrigBoundary from_terms(std::span<const std::pair<int, cplx>> terms);
  static TrigBoundary from_terms(std::initializer_list<std::pair<int, cplx>> terms);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }

  /// d_k, zero outside [-m, n].
  cplx coeff(int k) const noexcept;
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  cplx eval(double t) const;
  /// sum (ik)^order d_k exp(ikt), order in {1, 2}.
  cplx derivative(double t, int order) const;

  TrigBoundary scaled(cplx factor) const;

 private:
  int m_;
  int n_;
  std::vector<cplx> coeffs_;
};

struct FitResult {
  TrigBoundary boundary;
  double residual = 0.0;  ///< max |fit(t_j) - sample_j|
};

/// Discrete Fourier fit of uniformly spaced samples, truncated to [-m, n].
/// Throws Config when there are fewer than 2(m+n)+1 samples and Invariant
/// when the fitted curve is not admissible.
FitResult fit_from_samples(std::span<const cplx> samples, int m, int n);

/// Local minimisers of |z0'| below threshold * max|z0'|, with lambda estimated
/// from the one-sided tangents at t0 -+ tangent_offset.
std::vector<AnglePoint> detect_corners(const TrigBoundary& b, double threshold,
                                       double tangent_offset = 2.0 * kTwoPi / 256.0);

/// Winding number of z0 about `point`. Throws Config when the point lies
/// within `tolerance` of the dense polyline.
int winding_number(const TrigBoundary& b, cplx point, double tolerance = 1e-9);

/// Checks the boundary invariants: |z0'| > 0 on a dense grid, simple curve,
/// winding +1 about the origin. Throws Invariant with a diagnostic.
void validate_admissible(const TrigBoundary& b);

/// Uniform samples z0(2*pi*j/count).
std::vector<cplx> sample_curve(const TrigBoundary& b, int count);

}  // namespace confmap
