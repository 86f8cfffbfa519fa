#pragma once

#include "sslab/decay.hpp"

namespace sslab {

// Eigenpairs of C^dag C, where C is the propagator restricted to the
// undecayed subspace. Eigenvalue k is the survival probability at t0 of
// eigenvector k; values near 1 mean no decay at t0, near 0 full decay.
struct SpecialStateSet {
  double t0 = 0.0;
  VectorXd eigenvalues;   // length n, descending
  MatrixXcd eigenvectors; // n x n, column k for eigenvalue k
};

// Upper-left n x n block of exp(-iHt0).
MatrixXcd reduced_propagator(const DecayModel& model, double t0);

SpecialStateSet special_states(const DecayModel& model, double t0);

// Survival curve of eigenvector `state_index` embedded into the full
// space with zero band amplitudes.
SurvivalCurve specialness_trace(const DecayModel& model,
                                const SpecialStateSet& set, int state_index,
                                const std::vector<double>& time_grid,
                                unsigned n_threads = 1);

// Fraction of eigenvalues within epsilon of 0 or 1.
double cluster_fraction(const SpecialStateSet& set, double epsilon);

// Demo model for the multi-level decay experiment: n = 10, N = 100,
// t0 = 16. Per-mode couplings are graded so the C^dag C spectrum at t0
// spans from near 1 down to near 0 with mean about 1/2. Mode k couples
// to the whole band with uniform magnitude and DFT phases (orthogonal
// rows), and mode energies are spaced wider than any decay linewidth so
// the modes decay independently.
DecayModel demo_multi_level_model();
double demo_multi_level_t0();

// Same size but exactly constant coupling (rank one): n - 1 modes are
// decoupled from the band entirely.
DecayModel constant_coupling_model(double g);

// Constant magnitude with random phases drawn from the given seed.
DecayModel random_phase_model(double g, std::uint64_t seed);

}  // namespace sslab
