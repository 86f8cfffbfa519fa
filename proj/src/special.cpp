#include "sslab/special.hpp"

#include <cmath>
#include <numbers>

#include "sslab/rng.hpp"

namespace sslab {

MatrixXcd reduced_propagator(const DecayModel& model, double t0) {
  if (t0 < 0.0) throw ValidationError("reduced_propagator: t0 must be >= 0");
  const Propagator prop(assemble_hamiltonian(model));
  return prop.matrix(t0).topLeftCorner(model.n(), model.n());
}

namespace {

// Deterministic phase convention: first component of significant
// magnitude made real positive.
void fix_phase(Eigen::Ref<VectorXcd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      v *= std::conj(v[i]) / std::abs(v[i]);
      return;
    }
  }
}

}  // namespace

SpecialStateSet special_states(const DecayModel& model, double t0) {
  if (t0 <= 0.0) throw ValidationError("special_states: t0 must be > 0");
  const MatrixXcd C = reduced_propagator(model, t0);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(C.adjoint() * C);
  if (solver.info() != Eigen::Success)
    throw NumericError("special_states: eigendecomposition failed");
  const int n = model.n();
  SpecialStateSet set;
  set.t0 = t0;
  set.eigenvalues = VectorXd(n);
  set.eigenvectors = MatrixXcd(n, n);
  // Eigen returns ascending order; flip to descending.
  for (int k = 0; k < n; ++k) {
    set.eigenvalues[k] = solver.eigenvalues()[n - 1 - k];
    set.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    fix_phase(set.eigenvectors.col(k));
  }
  return set;
}

SurvivalCurve specialness_trace(const DecayModel& model,
                                const SpecialStateSet& set, int state_index,
                                const std::vector<double>& time_grid,
                                unsigned n_threads) {
  if (state_index < 0 || state_index >= model.n())
    throw ValidationError("specialness_trace: state index out of range");
  QuantumState psi0{VectorXcd::Zero(model.dim())};
  psi0.amplitudes.head(model.n()) = set.eigenvectors.col(state_index);
  return survival_curve(model, psi0, time_grid, n_threads);
}

double cluster_fraction(const SpecialStateSet& set, double epsilon) {
  if (epsilon <= 0.0 || epsilon >= 0.5)
    throw ValidationError("cluster_fraction: need 0 < epsilon < 0.5");
  int count = 0;
  for (Eigen::Index k = 0; k < set.eigenvalues.size(); ++k) {
    const double v = set.eigenvalues[k];
    if (v <= epsilon || v >= 1.0 - epsilon) ++count;
  }
  return static_cast<double>(count) /
         static_cast<double>(set.eigenvalues.size());
}

double demo_multi_level_t0() { return 16.0; }

DecayModel demo_multi_level_model() {
  constexpr int n = 10;
  constexpr int N = 100;
  const double t0 = demo_multi_level_t0();
  const double dw = 2.0 * std::numbers::pi / 100.0;  // recurrence at t = 100
  // Target survival probabilities at t0 per mode, mean about 1/2; the
  // golden rule fixes the total coupling power of each mode.
  const double target[n] = {0.97, 0.875, 0.77, 0.66, 0.55,
                            0.45, 0.34,  0.23, 0.12, 0.02};
  DecayModel m;
  m.omega = VectorXd(n);
  m.phi = MatrixXcd(n, N);
  m.Omega = VectorXd(N);
  for (int j = 0; j < N; ++j) m.Omega[j] = (j - 0.5 * (N - 1)) * dw;
  for (int k = 0; k < n; ++k) {
    // spacing 0.5 exceeds the widest linewidth (~0.25), so cross-mode
    // interference through shared band levels is negligible
    m.omega[k] = (k - 0.5 * (n - 1)) * 0.5;
    const double power = -std::log(target[k]) * N * dw /
                         (2.0 * std::numbers::pi * t0);
    const double amp = std::sqrt(power / N);
    for (int j = 0; j < N; ++j) {
      const double phase = 2.0 * std::numbers::pi * j * k / N;
      m.phi(k, j) = std::polar(amp, phase);
    }
  }
  return m;
}

DecayModel constant_coupling_model(double g) {
  DecayModel m = demo_multi_level_model();
  m.phi = MatrixXcd::Constant(m.n(), m.N(), g);
  m.omega.setZero();
  return m;
}

DecayModel random_phase_model(double g, std::uint64_t seed) {
  DecayModel m = constant_coupling_model(g);
  SplitMix64 rng(substream_seed(seed, /*tag=*/0x5350454341ULL, 0));
  for (int k = 0; k < m.n(); ++k)
    for (int j = 0; j < m.N(); ++j)
      m.phi(k, j) =
          std::polar(g, 2.0 * std::numbers::pi * rng.next_double());
  return m;
}

}  // namespace sslab
