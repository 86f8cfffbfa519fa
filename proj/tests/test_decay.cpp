#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sslab/decay.hpp"
#include "sslab/stats.hpp"

using namespace sslab;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

QuantumState basis_state(int dim, int k) {
  QuantumState psi{VectorXcd::Zero(dim)};
  psi.amplitudes[k] = 1.0;
  return psi;
}

}  // namespace

TEST_CASE("model validation") {
  DecayModel m = uniform_band_model(2, 5, 0.1, 0.01);
  CHECK_NOTHROW(m.validate());
  m.phi = MatrixXcd::Zero(3, 5);
  CHECK_THROWS_AS(m.validate(), ValidationError);
  const DecayModel empty;
  CHECK_THROWS_AS(empty.validate(), ValidationError);
}

TEST_CASE("uniform band layout") {
  const DecayModel m = uniform_band_model(1, 100, 0.02, 0.003);
  CHECK(m.N() == 100);
  CHECK(m.Omega[1] - m.Omega[0] == doctest::Approx(0.02).epsilon(1e-14));
  CHECK(m.Omega[0] == doctest::Approx(-m.Omega[99]).epsilon(1e-14));
  const MatrixXcd H = assemble_hamiltonian(m);
  CHECK((H - H.adjoint()).norm() == 0.0);  // Hermitian by construction
}

TEST_CASE("propagator is unitary and composes") {
  const MatrixXcd H = oracle::random_hermitian(12, 99);
  const Propagator prop(H);
  SplitMix64 rng(7);
  const QuantumState psi{oracle::random_unit_vector(12, rng)};
  const QuantumState out = prop.apply(psi, 1.3);
  CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-12));
  // U(t1+t2) = U(t1) U(t2)
  const QuantumState two_step = prop.apply(prop.apply(psi, 0.8), 0.5);
  CHECK((two_step.amplitudes - out.amplitudes).norm() < 1e-10);
  // U(0) = identity
  CHECK((prop.apply(psi, 0.0).amplitudes - psi.amplitudes).norm() < 1e-13);
  // U(-t) inverts U(t)
  CHECK((prop.apply(out, -1.3).amplitudes - psi.amplitudes).norm() < 1e-10);
}

TEST_CASE("spectral propagation matches RK4 time stepping") {
  {
    const MatrixXcd H = oracle::random_hermitian(10, 1234);
    SplitMix64 rng(5);
    const VectorXcd psi0 = oracle::random_unit_vector(10, rng);
    const VectorXcd spectral = propagate(H, QuantumState{psi0}, 0.7).amplitudes;
    const VectorXcd stepped = oracle::rk4_propagate(H, psi0, 0.7, 4000);
    CHECK((spectral - stepped).norm() < 1e-8);
  }
  {
    const MatrixXcd H = oracle::random_hermitian(20, 4321);
    SplitMix64 rng(6);
    const VectorXcd psi0 = oracle::random_unit_vector(20, rng);
    const VectorXcd spectral = propagate(H, QuantumState{psi0}, 1.1).amplitudes;
    const VectorXcd stepped = oracle::rk4_propagate(H, psi0, 1.1, 8000);
    CHECK((spectral - stepped).norm() < 1e-8);
  }
}

TEST_CASE("survival curve of the band model matches RK4 oracle") {
  const DecayModel m = uniform_band_model(1, 40, 0.05, 0.01);
  const MatrixXcd H = assemble_hamiltonian(m);
  const QuantumState psi0 = basis_state(m.dim(), 0);
  const auto grid = linspace(0.0, 10.0, 11);
  const SurvivalCurve curve = survival_curve(m, psi0, grid);
  CHECK(curve.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const VectorXcd ref =
        oracle::rk4_propagate(H, psi0.amplitudes, grid[i], 2000);
    CHECK(curve.values[i] ==
          doctest::Approx(std::norm(ref[0])).epsilon(1e-8));
  }
}

TEST_CASE("survival precondition rejects band amplitudes") {
  const DecayModel m = uniform_band_model(1, 10, 0.1, 0.01);
  QuantumState psi{VectorXcd::Zero(m.dim())};
  psi.amplitudes[3] = 1.0;
  CHECK_THROWS_AS(survival_curve(m, psi, {0.0, 1.0}), ValidationError);
}

TEST_CASE("Zeno time") {
  const DecayModel m = demo_single_level_model();
  const MatrixXcd H = assemble_hamiltonian(m);
  const QuantumState psi0 = basis_state(m.dim(), 0);
  // 1/(g sqrt(N)) with g = 1/70, N = 100
  CHECK(zeno_time(H, psi0) == doctest::Approx(7.0).epsilon(1e-12));
  // eigenstates have no energy spread
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
  const QuantumState eig{es.eigenvectors().col(0)};
  CHECK(std::isinf(zeno_time(H, eig)));
}

TEST_CASE("short-time decay is quadratic with the Zeno scale") {
  const DecayModel m = demo_single_level_model();
  const QuantumState psi0 = basis_state(m.dim(), 0);
  const SurvivalCurve c = survival_curve(m, psi0, {0.05, 0.1, 0.2});
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    const double t = c.times[i];
    CHECK(c.values[i] ==
          doctest::Approx(1.0 - t * t / 49.0).epsilon(1e-6));
  }
}

TEST_CASE("intermediate decay follows the golden rule") {
  const DecayModel m = demo_single_level_model();
  const QuantumState psi0 = basis_state(m.dim(), 0);
  const auto grid = linspace(20.0, 70.0, 201);
  const SurvivalCurve c = survival_curve(m, psi0, grid);
  std::vector<double> logs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    logs[i] = std::log(c.values[i]);
  const LinearFit fit = fit_line(grid, logs);
  const double gamma = 2.0 * kPi * (1.0 / 70.0) * (1.0 / 70.0) /
                       (2.0 * kPi / 300.0);
  CHECK(std::abs(-fit.slope - gamma) / gamma < 0.02);
  // log-linear residual under 2 percent of the log range
  double max_resid = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    max_resid = std::max(
        max_resid, std::abs(logs[i] - fit.slope * grid[i] - fit.intercept));
  CHECK(max_resid / std::abs(logs.back() - logs.front()) < 0.02);
}

TEST_CASE("finite band recurrence near 2 pi / spacing") {
  const DecayModel m = demo_single_level_model();
  const QuantumState psi0 = basis_state(m.dim(), 0);
  // the revival is imperfect and peaks slightly late (t ~ 333)
  const auto grid = linspace(240.0, 360.0, 481);
  const SurvivalCurve c = survival_curve(m, psi0, grid);
  double peak = 0.0, t_peak = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (c.values[i] > peak) {
      peak = c.values[i];
      t_peak = grid[i];
    }
  CHECK(peak > 0.5);
  CHECK(std::abs(t_peak - 300.0) < 60.0);
  // far from the recurrence the state has decayed
  const SurvivalCurve mid = survival_curve(m, psi0, {150.0});
  CHECK(mid.values[0] < 0.05);
}

TEST_CASE("thread count does not change survival values") {
  const DecayModel m = uniform_band_model(2, 30, 0.05, 0.01);
  QuantumState psi0 = basis_state(m.dim(), 0);
  const auto grid = linspace(0.0, 20.0, 64);
  const SurvivalCurve one = survival_curve(m, psi0, grid, 1);
  const SurvivalCurve four = survival_curve(m, psi0, grid, 4);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(one.values[i] == four.values[i]);
}
