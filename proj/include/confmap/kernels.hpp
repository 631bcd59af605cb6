#pragma once

#include <vector>

#include "confmap/boundary.hpp"
#include "confmap/fourier.hpp"

namespace confmap {

/// Selects the OpenMP fill or the single-threaded reference loop. Both
/// produce bitwise identical results.
enum class Execution { Parallel, Serial };

/// K(tau, t) = Im[z0'(t) / (z0(tau) - z0(t))], with the diagonal limit
/// -Im[z0''(t) / (2 z0'(t))]. Throws Numerical when the chord vanishes off
/// the diagonal.
double kernel_K(const TrigBoundary& b, double tau, double t);

/// L(tau, t) + (1/2) cot((tau - t)/2), where L = d/dt log|z0(tau) - z0(t)|.
/// Evaluated as d/dt log|R| for the factorisation
/// z0(tau) - z0(t) = (exp(i(tau - t)) - 1) R(tau, t), which is finite and
/// exact on the diagonal. Throws Numerical when R vanishes.
double kernel_L_regular(const TrigBoundary& b, double tau, double t);

/// Conjugate series: a_l cos lt + b_l sin lt -> a_l sin lt - b_l cos lt,
/// constant -> 0.
RealFourier hilbert_conjugate(const RealFourier& g);

/// P(t_j) on the uniform grid of size N:
/// conj[u'](t) + (2/N) sum_a u'(tau_a) L_reg(tau_a, t), u = log|z0|.
/// Requires N a power of two and N >= 4(m + n).
std::vector<double> compute_P(const TrigBoundary& b, int N, Execution exec = Execution::Parallel);

/// Kernel samples on the uniform grid t_j = 2*pi*j/N.
struct KernelGrid {
  int N = 0;
  std::vector<double> nodes;
  std::vector<double> K;  ///< row-major, K[a*N + b] = K(tau_a, t_b)
  std::vector<double> P;

  double k(int a, int b) const { return K[static_cast<std::size_t>(a) * N + b]; }
};

KernelGrid fill_kernel_grid(const TrigBoundary& b, int N, Execution exec = Execution::Parallel);

/// Throws Config unless N is a power of two with N >= 4(m + n).
void check_kernel_grid_size(const TrigBoundary& b, int N);

}  // namespace confmap
