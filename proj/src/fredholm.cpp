#include "confmap/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "confmap/error.hpp"
#include "confmap/fourier.hpp"

namespace confmap {
namespace {

void fill_rhs(LinearSystem& sys) {
  const RealFourier p = analyze(sys.grid.P, sys.M);
  sys.rhs.resize(2 * sys.M);
  for (int j = 0; j < sys.M; ++j) {
    sys.rhs[j] = p.cos_coeffs[j];
    sys.rhs[sys.M + j] = p.sin_coeffs[j];
  }
}

std::vector<double> harmonic_samples(const FredholmSolution& sol, int N) {
  RealFourier q;
  q.cos_coeffs = sol.alpha;
  q.sin_coeffs = sol.beta;
  return synthesize(q, N);
}

}  // namespace

void check_system_size(const TrigBoundary& b, int M, int N) {
  if (M < 1) throw Error(ErrorKind::Config, "fredholm", "truncation order M must be positive");
  const int need = std::max(2 * (2 * M + 1), 4 * (b.m() + b.n()));
  if (!is_power_of_two(N) || N < need) {
    throw Error(ErrorKind::Config, "fredholm",
                "grid size N=" + std::to_string(N) + " must be a power of two and at least " +
                    std::to_string(need) + " for M=" + std::to_string(M));
  }
}

LinearSystem assemble_system(const TrigBoundary& b, int M, int N, Execution exec) {
  check_system_size(b, M, N);
  return assemble_system(fill_kernel_grid(b, N, exec), M);
}

LinearSystem assemble_system(KernelGrid grid, int M) {
  const int N = grid.N;
  LinearSystem sys;
  sys.M = M;
  const RealDft2d F(grid.K, N);
  const double w = 4.0 / (static_cast<double>(N) * N);  // (2*pi/N)^2 / pi^2
  sys.matrix = Eigen::MatrixXd::Identity(2 * M, 2 * M);
  for (int j = 1; j <= M; ++j) {
    for (int k = 1; k <= M; ++k) {
      const cplx fp = F(k, j);
      const cplx fm = F(k, -j);
      const double cc = 0.5 * (fp.real() + fm.real());
      const double sc = -0.5 * (fp.imag() + fm.imag());
      const double cs = -0.5 * (fp.imag() - fm.imag());
      const double ss = -0.5 * (fp.real() - fm.real());
      sys.matrix(j - 1, k - 1) -= w * cc;
      sys.matrix(j - 1, M + k - 1) -= w * sc;
      sys.matrix(M + j - 1, k - 1) -= w * cs;
      sys.matrix(M + j - 1, M + k - 1) -= w * ss;
    }
  }
  sys.grid = std::move(grid);
  fill_rhs(sys);
  return sys;
}

LinearSystem assemble_system_naive(const TrigBoundary& b, int M, int N) {
  check_system_size(b, M, N);
  return assemble_system_naive(fill_kernel_grid(b, N, Execution::Serial), M);
}

LinearSystem assemble_system_naive(KernelGrid grid, int M) {
  const int N = grid.N;
  LinearSystem sys;
  sys.M = M;
  std::vector<double> c(static_cast<std::size_t>(M) * N), s(c.size());
  for (int k = 1; k <= M; ++k) {
    for (int a = 0; a < N; ++a) {
      c[static_cast<std::size_t>(k - 1) * N + a] = std::cos(k * grid.nodes[a]);
      s[static_cast<std::size_t>(k - 1) * N + a] = std::sin(k * grid.nodes[a]);
    }
  }
  const double w = 4.0 / (static_cast<double>(N) * N);
  sys.matrix = Eigen::MatrixXd::Identity(2 * M, 2 * M);
  for (int j = 1; j <= M; ++j) {
    const double* cj = &c[static_cast<std::size_t>(j - 1) * N];
    const double* sj = &s[static_cast<std::size_t>(j - 1) * N];
    for (int k = 1; k <= M; ++k) {
      const double* ck = &c[static_cast<std::size_t>(k - 1) * N];
      const double* sk = &s[static_cast<std::size_t>(k - 1) * N];
      double cc = 0.0, sc = 0.0, cs = 0.0, ss = 0.0;
      for (int a = 0; a < N; ++a) {
        const double* row = &grid.K[static_cast<std::size_t>(a) * N];
        for (int bt = 0; bt < N; ++bt) {
          cc += row[bt] * ck[a] * cj[bt];
          sc += row[bt] * sk[a] * cj[bt];
          cs += row[bt] * ck[a] * sj[bt];
          ss += row[bt] * sk[a] * sj[bt];
        }
      }
      sys.matrix(j - 1, k - 1) -= w * cc;
      sys.matrix(j - 1, M + k - 1) -= w * sc;
      sys.matrix(M + j - 1, k - 1) -= w * cs;
      sys.matrix(M + j - 1, M + k - 1) -= w * ss;
    }
  }
  sys.grid = std::move(grid);
  fill_rhs(sys);
  return sys;
}

FredholmSolution solve(const LinearSystem& system) {
  const int M = system.M;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system.matrix);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-12)) {
    std::ostringstream msg;
    msg << "system matrix is numerically singular (condition estimate " << 1.0 / rcond
        << " > 1e12, M=" << M << ", N=" << system.grid.N
        << "); the boundary may be nearly degenerate or under-resolved";
    throw Error(ErrorKind::Numerical, "fredholm", msg.str());
  }
  const Eigen::VectorXd x = lu.solve(system.rhs);
  if (!x.allFinite()) {
    throw Error(ErrorKind::Numerical, "fredholm", "non-finite solution vector");
  }
  FredholmSolution sol;
  sol.M = M;
  sol.alpha.assign(x.data(), x.data() + M);
  sol.beta.assign(x.data() + M, x.data() + 2 * M);
  sol.condition = 1.0 / rcond;
  sol.residual_norm = equation_residual(system.grid, sol);
  return sol;
}

double equation_residual(const KernelGrid& grid, const FredholmSolution& sol) {
  const int N = grid.N;
  const std::vector<double> qp = harmonic_samples(sol, N);
  std::vector<double> integral(N, 0.0);
  for (int a = 0; a < N; ++a) {
    const double* row = &grid.K[static_cast<std::size_t>(a) * N];
    for (int b = 0; b < N; ++b) integral[b] += qp[a] * row[b];
  }
  double worst = 0.0;
  for (int b = 0; b < N; ++b) {
    worst = std::max(worst, std::abs(qp[b] - 2.0 * integral[b] / N - grid.P[b]));
  }
  return worst;
}

double q_prime(const FredholmSolution& sol, double t) {
  double sum = 0.0;
  const cplx step = std::polar(1.0, t);
  cplx e = step;
  for (int l = 0; l < sol.M; ++l) {
    sum += sol.alpha[l] * e.real() + sol.beta[l] * e.imag();
    e *= step;
  }
  return sum;
}

double q_value(const FredholmSolution& sol, double t) {
  double sum = 0.0;
  const cplx step = std::polar(1.0, t);
  cplx e = step;
  for (int l = 0; l < sol.M; ++l) {
    sum += (sol.alpha[l] * e.imag() - sol.beta[l] * e.real()) / (l + 1);
    e *= step;
  }
  return sum;
}

RawCorrespondence::RawCorrespondence(TrigBoundary boundary, FredholmSolution solution,
                                     int unwrap_nodes)
    : boundary_(std::move(boundary)), solution_(std::move(solution)) {
  if (unwrap_nodes < 16) {
    throw Error(ErrorKind::Config, "fredholm", "unwrap table needs at least 16 nodes");
  }
  const int G = unwrap_nodes;
  samples_.resize(G + 1);
  unwrapped_.resize(G + 1);
  for (int j = 0; j <= G; ++j) samples_[j] = boundary_.eval(kTwoPi * j / G);
  unwrapped_[0] = std::arg(samples_[0]);
  for (int j = 1; j <= G; ++j) {
    unwrapped_[j] = unwrapped_[j - 1] + std::arg(samples_[j] / samples_[j - 1]);
  }
  const double turns = (unwrapped_[G] - unwrapped_[0]) / kTwoPi;
  if (std::abs(turns - 1.0) > 1e-6) {
    throw Error(ErrorKind::Invariant, "fredholm",
                "arg z0 gains " + std::to_string(turns) + " turns per period, expected 1");
  }
}

double RawCorrespondence::arg(double t) const {
  const int G = static_cast<int>(samples_.size()) - 1;
  const double k = std::floor(t / kTwoPi);
  const double tr = t - kTwoPi * k;
  const int j = std::clamp(static_cast<int>(tr / kTwoPi * G), 0, G - 1);
  return unwrapped_[j] + std::arg(boundary_.eval(tr) / samples_[j]) + kTwoPi * k;
}

double RawCorrespondence::value(double t) const { return arg(t) - q_value(solution_, t); }

double RawCorrespondence::slope(double t) const {
  return std::imag(boundary_.derivative(t, 1) / boundary_.eval(t)) - q_prime(solution_, t);
}

double theta_raw(const RawCorrespondence& c, double t) { return c.value(t); }

}  // namespace confmap
