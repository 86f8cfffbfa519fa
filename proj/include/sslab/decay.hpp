#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace sslab {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One (or n) discrete levels coupled to a quasi-continuum band of N levels.
// H = [[diag(omega), phi], [phi^dag, diag(Omega)]], natural units (hbar = 1).
struct DecayModel {
  VectorXd omega;   // n level energies
  MatrixXcd phi;    // n x N coupling
  VectorXd Omega;   // N band energies

  int n() const { return static_cast<int>(omega.size()); }
  int N() const { return static_cast<int>(Omega.size()); }
  int dim() const { return n() + N(); }

  void validate() const;
};

struct QuantumState {
  VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

struct SurvivalCurve {
  std::vector<double> times;
  std::vector<double> values;
};

// Canonical band generator: Omega equally spaced with spacing delta_omega,
// centered on zero; constant real coupling g to every band level; omega = 0.
// Recurrence time is 2*pi/delta_omega.
DecayModel uniform_band_model(int n, int N, double delta_omega, double g);

// Fig-1 style demo: single level, N = 100, spacing 2*pi/300, coupling set
// so the Zeno time is 7.
DecayModel demo_single_level_model();

MatrixXcd assemble_hamiltonian(const DecayModel& model);

// Spectral propagator for a fixed Hermitian H: caches the
// eigendecomposition so that exp(-iHt) is cheap for many times t.
class Propagator {
 public:
  explicit Propagator(const MatrixXcd& H);

  QuantumState apply(const QuantumState& psi0, double t) const;
  MatrixXcd matrix(double t) const;  // full exp(-iHt)

  const VectorXd& eigenvalues() const { return evals_; }

 private:
  VectorXd evals_;
  MatrixXcd evecs_;
};

QuantumState propagate(const MatrixXcd& H, const QuantumState& psi0, double t);

// Squared norm of the projection of exp(-iHt) psi0 onto the first n
// coordinates, per time-grid point. psi0 must lie in the undecayed
// subspace (zero band amplitudes).
SurvivalCurve survival_curve(const DecayModel& model, const QuantumState& psi0,
                             const std::vector<double>& time_grid,
                             unsigned n_threads = 1);

// hbar / sqrt(<H^2> - <H>^2); +infinity for an eigenstate.
double zeno_time(const MatrixXcd& H, const QuantumState& psi);

}  // namespace sslab
