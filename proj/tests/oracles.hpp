#pragma once

// Independent numerical oracles used only by the tests. Deliberately
// different algorithms from the library: time stepping instead of
// spectral decomposition, quadrature instead of closed forms, random
// search instead of eigensolvers.

#include <Eigen/Dense>
#include <complex>

#include "sslab/rng.hpp"

namespace oracle {

// Classical RK4 on i psi' = H psi. Global error O((t/steps)^4).
inline Eigen::VectorXcd rk4_propagate(const Eigen::MatrixXcd& H,
                                      Eigen::VectorXcd psi, double t,
                                      int steps) {
  const std::complex<double> mi(0.0, -1.0);
  const double dt = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Eigen::VectorXcd k1 = mi * (H * psi);
    const Eigen::VectorXcd k2 = mi * (H * (psi + (0.5 * dt) * k1));
    const Eigen::VectorXcd k3 = mi * (H * (psi + (0.5 * dt) * k2));
    const Eigen::VectorXcd k4 = mi * (H * (psi + dt * k3));
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

inline Eigen::MatrixXcd random_hermitian(int dim, std::uint64_t seed) {
  sslab::SplitMix64 rng(seed);
  Eigen::MatrixXcd A(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      A(i, j) = std::complex<double>(2.0 * rng.next_double() - 1.0,
                                     2.0 * rng.next_double() - 1.0);
  return 0.5 * (A + A.adjoint().eval());
}

inline Eigen::VectorXcd random_unit_vector(int dim, sslab::SplitMix64& rng) {
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i)
    v[i] = std::complex<double>(2.0 * rng.next_double() - 1.0,
                                2.0 * rng.next_double() - 1.0);
  return v / v.norm();
}

// Composite Simpson on [a, b] with n panels (n even behavior enforced by
// per-panel midpoints).
template <typename F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = a + i * h;
    acc += (f(x) + 4.0 * f(x + 0.5 * h) + f(x + h)) * (h / 6.0);
  }
  return acc;
}

}  // namespace oracle
