#include "confmap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "confmap/error.hpp"

namespace confmap {
namespace {

// Partial geometric sums S_k(h) = sum_{l<k} e^{ilh} and their h-derivatives,
// k = 1..K, stored at index k - 1. phase(l) returns e^{ilh}.
template <class Phase>
void geometric_sums(Phase phase, int K, cplx* S, cplx* dS) {
  cplx s = 0.0;
  cplx ds = 0.0;
  for (int k = 1; k <= K; ++k) {
    const int l = k - 1;
    const cplx e = phase(l);
    s += e;
    ds += cplx(0.0, static_cast<double>(l)) * e;
    S[k - 1] = s;
    dS[k - 1] = ds;
  }
}

// R and dR/dt for the factorisation z0(tau) - z0(t) = (e^{ih} - 1) R.
// et[k-1] = e^{ikt} (k = 1..n), etau[k-1] = e^{-ik tau} (k = 1..m).
struct RegularFactor {
  cplx R;
  cplx dR;
};

RegularFactor regular_factor(const TrigBoundary& b, const cplx* et, const cplx* etau,
                             const cplx* S, const cplx* dS) {
  cplx R = 0.0;
  cplx dR = 0.0;
  for (int k = 1; k <= b.n(); ++k) {
    const cplx term = b.coeff(k) * et[k - 1];
    R += term * S[k - 1];
    dR += term * (cplx(0.0, static_cast<double>(k)) * S[k - 1] - dS[k - 1]);
  }
  for (int k = 1; k <= b.m(); ++k) {
    const cplx term = b.coeff(-k) * etau[k - 1];
    R -= term * S[k - 1];
    dR += term * dS[k - 1];
  }
  return {R, dR};
}

std::vector<cplx> roots_of_unity(int N) {
  std::vector<cplx> w(N);
  for (int j = 0; j < N; ++j) w[j] = std::polar(1.0, kTwoPi * j / N);
  return w;
}

struct NodeSamples {
  std::vector<cplx> z, z1, z2;
};

NodeSamples sample_nodes(const TrigBoundary& b, int N) {
  NodeSamples s{std::vector<cplx>(N), std::vector<cplx>(N), std::vector<cplx>(N)};
  for (int j = 0; j < N; ++j) {
    const double t = kTwoPi * j / N;
    s.z[j] = b.eval(t);
    s.z1[j] = b.derivative(t, 1);
    s.z2[j] = b.derivative(t, 2);
  }
  return s;
}

template <class Body>
bool for_each_index(int count, Execution exec, Body body) {
  int failed = 0;
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static) reduction(| : failed)
    for (int i = 0; i < count; ++i) failed |= body(i) ? 0 : 1;
  } else {
    for (int i = 0; i < count; ++i) failed |= body(i) ? 0 : 1;
  }
  return failed == 0;
}

}  // namespace

void check_kernel_grid_size(const TrigBoundary& b, int N) {
  if (!is_power_of_two(N) || N < 4 * (b.m() + b.n())) {
    throw Error(ErrorKind::Config, "kernels",
                "grid size N=" + std::to_string(N) +
                    " must be a power of two and at least 4(m+n) = " +
                    std::to_string(4 * (b.m() + b.n())));
  }
}

double kernel_K(const TrigBoundary& b, double tau, double t) {
  const cplx z1 = b.derivative(t, 1);
  if (std::remainder(tau - t, kTwoPi) == 0.0) {
    return -std::imag(b.derivative(t, 2) / (2.0 * z1));
  }
  const cplx chord = b.eval(tau) - b.eval(t);
  if (chord == cplx(0.0)) {
    throw Error(ErrorKind::Numerical, "kernels",
                "z0(tau) = z0(t) for tau != t: boundary is not simple");
  }
  return std::imag(z1 / chord);
}

double kernel_L_regular(const TrigBoundary& b, double tau, double t) {
  const int K = std::max(b.m(), b.n());
  std::vector<cplx> S(K), dS(K), et(b.n()), etau(b.m());
  const double h = tau - t;
  geometric_sums([h](int l) { return std::polar(1.0, l * h); }, K, S.data(), dS.data());
  for (int k = 1; k <= b.n(); ++k) et[k - 1] = std::polar(1.0, k * t);
  for (int k = 1; k <= b.m(); ++k) etau[k - 1] = std::polar(1.0, -k * tau);
  const RegularFactor f = regular_factor(b, et.data(), etau.data(), S.data(), dS.data());
  if (f.R == cplx(0.0)) {
    throw Error(ErrorKind::Numerical, "kernels", "regular chord factor vanishes");
  }
  return std::real(f.dR / f.R);
}

RealFourier hilbert_conjugate(const RealFourier& g) {
  RealFourier c;
  c.a0 = 0.0;
  c.cos_coeffs.resize(g.sin_coeffs.size());
  c.sin_coeffs.resize(g.cos_coeffs.size());
  for (std::size_t l = 0; l < g.cos_coeffs.size(); ++l) {
    c.sin_coeffs[l] = g.cos_coeffs[l];
    c.cos_coeffs[l] = -g.sin_coeffs[l];
  }
  return c;
}

std::vector<double> compute_P(const TrigBoundary& b, int N, Execution exec) {
  check_kernel_grid_size(b, N);
  const NodeSamples s = sample_nodes(b, N);
  std::vector<double> du(N);
  for (int j = 0; j < N; ++j) du[j] = std::real(s.z1[j] / s.z[j]);

  const std::vector<double> conj = synthesize(hilbert_conjugate(analyze(du, N / 2 - 1)), N);

  const int K = std::max(b.m(), b.n());
  const std::vector<cplx> roots = roots_of_unity(N);
  // Geometric sums depend only on the index difference a - b.
  std::vector<cplx> S(static_cast<std::size_t>(N) * K), dS(S.size());
  for (int hd = 0; hd < N; ++hd) {
    const auto phase = [&](int l) { return roots[(static_cast<long long>(l) * hd) % N]; };
    geometric_sums(phase, K, &S[static_cast<std::size_t>(hd) * K],
                   &dS[static_cast<std::size_t>(hd) * K]);
  }
  // e^{ikt_j} and e^{-ik tau_j}.
  std::vector<cplx> et(static_cast<std::size_t>(N) * b.n()), etau(static_cast<std::size_t>(N) * b.m());
  for (int j = 0; j < N; ++j) {
    for (int k = 1; k <= b.n(); ++k) {
      et[static_cast<std::size_t>(j) * b.n() + k - 1] = roots[(static_cast<long long>(k) * j) % N];
    }
    for (int k = 1; k <= b.m(); ++k) {
      etau[static_cast<std::size_t>(j) * b.m() + k - 1] =
          roots[(N - (static_cast<long long>(k) * j) % N) % N];
    }
  }

  std::vector<double> P(N);
  const bool ok = for_each_index(N, exec, [&](int col) {
    double acc = 0.0;
    for (int a = 0; a < N; ++a) {
      const int hd = ((a - col) % N + N) % N;
      const RegularFactor f =
          regular_factor(b, &et[static_cast<std::size_t>(col) * b.n()],
                         b.m() > 0 ? &etau[static_cast<std::size_t>(a) * b.m()] : nullptr,
                         &S[static_cast<std::size_t>(hd) * K], &dS[static_cast<std::size_t>(hd) * K]);
      if (f.R == cplx(0.0)) return false;
      acc += du[a] * std::real(f.dR / f.R);
    }
    P[col] = conj[col] + 2.0 * acc / N;
    return std::isfinite(P[col]);
  });
  if (!ok) {
    throw Error(ErrorKind::Numerical, "kernels", "regular chord factor vanishes on the grid");
  }
  return P;
}

KernelGrid fill_kernel_grid(const TrigBoundary& b, int N, Execution exec) {
  check_kernel_grid_size(b, N);
  const NodeSamples s = sample_nodes(b, N);
  KernelGrid grid;
  grid.N = N;
  grid.nodes.resize(N);
  for (int j = 0; j < N; ++j) grid.nodes[j] = kTwoPi * j / N;
  grid.K.resize(static_cast<std::size_t>(N) * N);

  std::vector<double> diag(N);
  for (int j = 0; j < N; ++j) diag[j] = -std::imag(s.z2[j] / (2.0 * s.z1[j]));

  const bool ok = for_each_index(N, exec, [&](int a) {
    double* row = &grid.K[static_cast<std::size_t>(a) * N];
    bool row_ok = true;
    for (int col = 0; col < N; ++col) {
      if (col == a) {
        row[col] = diag[col];
      } else {
        const cplx chord = s.z[a] - s.z[col];
        row[col] = std::imag(s.z1[col] / chord);
      }
      row_ok = row_ok && std::isfinite(row[col]);
    }
    return row_ok;
  });
  if (!ok) {
    throw Error(ErrorKind::Numerical, "kernels",
                "non-finite kernel value: boundary chord vanishes on the grid");
  }
  grid.P = compute_P(b, N, exec);
  return grid;
}

}  // namespace confmap
