#pragma once

#include <Eigen/Dense>
#include <vector>

#include "confmap/boundary.hpp"
#include "confmap/kernels.hpp"

namespace confmap {

/// Truncated 2M x 2M system over (alpha, beta) with the kernel grid it was
/// assembled from.
struct LinearSystem {
  int M = 0;
  Eigen::MatrixXd matrix;  ///< [[A, B], [C, D]]
  Eigen::VectorXd rhs;     ///< [gamma; kappa]
  KernelGrid grid;
};

/// Coefficients of q' = sum_l alpha_l cos lt + beta_l sin lt.
struct FredholmSolution {
  int M = 0;
  std::vector<double> alpha;
  std::vector<double> beta;
  double residual_norm = 0.0;
  double condition = 1.0;  ///< 1 / (reciprocal condition estimate)
};

/// Throws Config unless M >= 1 and N >= max(2(2M+1), 4(m+n)), N a power of two.
void check_system_size(const TrigBoundary& b, int M, int N);

/// Assembly by a single 2-D transform of the kernel grid.
LinearSystem assemble_system(const TrigBoundary& b, int M, int N,
                             Execution exec = Execution::Parallel);
LinearSystem assemble_system(KernelGrid grid, int M);

/// Reference assembly: every double sum evaluated term by term.
LinearSystem assemble_system_naive(const TrigBoundary& b, int M, int N);
LinearSystem assemble_system_naive(KernelGrid grid, int M);

/// Dense LU with partial pivoting. Throws Numerical when the condition
/// estimate exceeds 1e12.
FredholmSolution solve(const LinearSystem& system);

/// max_j |q'(t_j) - (2/N) sum_a q'(tau_a) K(tau_a, t_j) - P(t_j)|.
double equation_residual(const KernelGrid& grid, const FredholmSolution& sol);

/// q'(t) and q(t) = sum (alpha_l/l) sin lt - (beta_l/l) cos lt.
double q_prime(const FredholmSolution& sol, double t);
double q_value(const FredholmSolution& sol, double t);

/// Raw boundary correspondence theta(t) = arg z0(t) - q(t), with arg z0
/// unwrapped continuously so that theta(t + 2*pi) = theta(t) + 2*pi.
class RawCorrespondence {
 public:
  /// Throws Invariant when z0 does not wind once around the origin.
  RawCorrespondence(TrigBoundary boundary, FredholmSolution solution, int unwrap_nodes = 16384);

  const TrigBoundary& boundary() const noexcept { return boundary_; }
  const FredholmSolution& solution() const noexcept { return solution_; }

  /// Continuous arg z0(t) with arg z0(0) in (-pi, pi].
  double arg(double t) const;
  double value(double t) const;
  /// Im(z0'/z0) - q'(t).
  double slope(double t) const;

 private:
  TrigBoundary boundary_;
  FredholmSolution solution_;
  std::vector<double> unwrapped_;
  std::vector<cplx> samples_;
};

double theta_raw(const RawCorrespondence& c, double t);

}  // namespace confmap
