#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sslab/rng.hpp"

namespace sslab {

// Cauchy-distributed spin kicks for a beam entering at angle theta.
struct KickModel {
  double a = 1e-4;     // Cauchy scale, radians
  double theta = 0.0;  // entry angle in [0, pi]
  long n_max = 10000;  // symmetric branch/summation cutoff

  void validate() const;
};

struct OutcomeProbabilities {
  double p_up = 0.0;
  double p_down = 0.0;
  double z = 0.0;  // normalizer, F(theta/2) + F((theta-pi)/2)
};

enum class Outcome { Up, Down };

double cauchy_pdf(double a, double x);
double cauchy_cdf(double a, double x);
double sample_cauchy(double a, SplitMix64& rng);

// F_a(psi) = sum_n (a/pi) / (a^2 + (n*pi - psi)^2), accumulated in +-n
// pairs (the series is only conditionally convergent) with an analytic
// tail correction.
double wrapped_sum_numeric(double a, double psi, long n_max);

// Closed form of the same sum, from the imaginary part of the cotangent
// partial-fraction identity at z = psi + i a.
double wrapped_sum_closed(double a, double psi);

OutcomeProbabilities outcome_probabilities(const KickModel& model);

struct KickExpectations {
  double mean_up = 0.0;
  double mean_down = 0.0;
};

// Small-a closed forms: <phi>_UP = -sin(t/2)cos^3(t/2),
// <phi>_DOWN = -sin^3(t/2)cos(t/2).
KickExpectations conditional_kick_expectation_closed(double theta);

// Finite-a evaluation of the conditional-expectation series by paired
// symmetric summation.
KickExpectations conditional_kick_expectation_numeric(const KickModel& model);

// Branch sets: UP at phi = n*pi - theta/2, DOWN at (n + 1/2)*pi - theta/2.
// Label of the nearer branch; exact midpoints break toward UP.
Outcome classify_kick(double theta, double phi);

struct SelfAveragingReport {
  double ks_cauchy = 0.0;     // means-of-batch vs single draws
  double ks_gauss = 0.0;      // same construction for a Gaussian control
  double ks_critical_1pct = 0.0;
  bool cauchy_passes = false; // distributions indistinguishable
  bool gauss_fails = false;   // control collapses as 1/sqrt(batch)
};

SelfAveragingReport self_averaging_test(double a, int batch, int repeats,
                                        std::uint64_t seed);

enum class OptimizeMode { Sorted, Total };

struct AngleOptimum {
  double theta_star = 0.0;
  std::vector<double> thetas;
  std::vector<double> objective;
};

// Maximizer of |objective| on [0, pi] by dense grid plus golden-section
// refinement. Sorted mode: cos^2(t/2) <phi>_UP; total mode:
// |cos^2(t/2)<phi>_UP + sin^2(t/2)<phi>_DOWN|.
AngleOptimum optimize_entry_angle(OptimizeMode mode, int grid_points = 2000);

double angle_objective(OptimizeMode mode, double theta);

struct CotResidual {
  double real = 0.0;
  double imag = 0.0;
};

// |cot(z) - paired partial sum of 1/(z - n*pi)| at z = re + i*im,
// real and imaginary parts separately.
CotResidual cot_identity_residual(double z_real, double z_imag, long n_max);

}  // namespace sslab
