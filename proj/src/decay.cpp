#include "sslab/decay.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sslab/parallel.hpp"

namespace sslab {

void DecayModel::validate() const {
  if (n() < 1 || N() < 1)
    throw ValidationError("DecayModel: need n >= 1 and N >= 1");
  if (phi.rows() != n() || phi.cols() != N())
    throw ValidationError("DecayModel: phi must be n x N");
}

DecayModel uniform_band_model(int n, int N, double delta_omega, double g) {
  DecayModel m;
  m.omega = VectorXd::Zero(n);
  m.phi = MatrixXcd::Constant(n, N, g);
  m.Omega = VectorXd(N);
  for (int k = 0; k < N; ++k)
    m.Omega[k] = (k - 0.5 * (N - 1)) * delta_omega;
  return m;
}

DecayModel demo_single_level_model() {
  // Zeno time 1/(g*sqrt(N)) = 7, recurrence at t = 300.
  return uniform_band_model(1, 100, 2.0 * std::numbers::pi / 300.0, 1.0 / 70.0);
}

MatrixXcd assemble_hamiltonian(const DecayModel& model) {
  model.validate();
  const int n = model.n(), N = model.N(), d = model.dim();
  MatrixXcd H = MatrixXcd::Zero(d, d);
  for (int i = 0; i < n; ++i) H(i, i) = model.omega[i];
  for (int k = 0; k < N; ++k) H(n + k, n + k) = model.Omega[k];
  // fill one triangle, mirror the other: Hermitian by construction
  H.topRightCorner(n, N) = model.phi;
  H.bottomLeftCorner(N, n) = model.phi.adjoint();
  return H;
}

Propagator::Propagator(const MatrixXcd& H) {
  if (!H.allFinite()) throw NumericError("Propagator: non-finite Hamiltonian");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(H);
  if (solver.info() != Eigen::Success)
    throw NumericError("Propagator: eigendecomposition failed");
  evals_ = solver.eigenvalues();
  evecs_ = solver.eigenvectors();
}

QuantumState Propagator::apply(const QuantumState& psi0, double t) const {
  if (!std::isfinite(t)) throw ValidationError("propagate: t must be finite");
  const VectorXcd coeff = evecs_.adjoint() * psi0.amplitudes;
  VectorXcd rotated(coeff.size());
  for (Eigen::Index k = 0; k < coeff.size(); ++k)
    rotated[k] = coeff[k] * std::polar(1.0, -evals_[k] * t);
  return QuantumState{evecs_ * rotated};
}

MatrixXcd Propagator::matrix(double t) const {
  VectorXcd phase(evals_.size());
  for (Eigen::Index k = 0; k < evals_.size(); ++k)
    phase[k] = std::polar(1.0, -evals_[k] * t);
  return evecs_ * phase.asDiagonal() * evecs_.adjoint();
}

QuantumState propagate(const MatrixXcd& H, const QuantumState& psi0,
                       double t) {
  return Propagator(H).apply(psi0, t);
}

SurvivalCurve survival_curve(const DecayModel& model, const QuantumState& psi0,
                             const std::vector<double>& time_grid,
                             unsigned n_threads) {
  const int n = model.n();
  if (psi0.amplitudes.tail(model.N()).norm() > 1e-12)
    throw ValidationError(
        "survival_curve: psi0 must lie in the undecayed subspace");
  const Propagator prop(assemble_hamiltonian(model));
  SurvivalCurve curve;
  curve.times = time_grid;
  curve.values.resize(time_grid.size());
  parallel_for(
      time_grid.size(),
      [&](std::size_t k) {
        const QuantumState psi = prop.apply(psi0, time_grid[k]);
        curve.values[k] = psi.amplitudes.head(n).squaredNorm();
      },
      n_threads);
  return curve;
}

double zeno_time(const MatrixXcd& H, const QuantumState& psi) {
  const VectorXcd hpsi = H * psi.amplitudes;
  const double h1 = psi.amplitudes.dot(hpsi).real();
  const double h2 = hpsi.squaredNorm();
  const double var = h2 - h1 * h1;
  if (var <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(var);
}

}  // namespace sslab
