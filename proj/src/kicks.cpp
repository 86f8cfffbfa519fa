#include "sslab/kicks.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "sslab/decay.hpp"  // ValidationError
#include "sslab/stats.hpp"

namespace sslab {

namespace {
constexpr double kPi = std::numbers::pi;
}

void KickModel::validate() const {
  if (!(a > 0.0)) throw ValidationError("KickModel: a must be > 0");
  if (theta < 0.0 || theta > kPi)
    throw ValidationError("KickModel: theta must lie in [0, pi]");
  if (n_max < 1) throw ValidationError("KickModel: n_max must be >= 1");
}

double cauchy_pdf(double a, double x) {
  if (!(a > 0.0)) throw ValidationError("cauchy_pdf: a must be > 0");
  return (a / kPi) / (x * x + a * a);
}

double cauchy_cdf(double a, double x) {
  return 0.5 + std::atan(x / a) / kPi;
}

double sample_cauchy(double a, SplitMix64& rng) {
  if (!(a > 0.0)) throw ValidationError("sample_cauchy: a must be > 0");
  return a * std::tan(kPi * (rng.next_double() - 0.5));
}

double wrapped_sum_numeric(double a, double psi, long n_max) {
  const double c = a / kPi;
  double sum = c / (a * a + psi * psi);
  for (long n = 1; n <= n_max; ++n) {
    const double dm = n * kPi - psi;
    const double dp = n * kPi + psi;
    sum += c / (a * a + dm * dm) + c / (a * a + dp * dp);
  }
  // integral tail over |n| > n_max (midpoint rule boundary at n_max + 1/2)
  const double edge = (n_max + 0.5) * kPi;
  sum += (std::atan(a / (edge - psi)) + std::atan(a / (edge + psi))) /
         (kPi * kPi);
  return sum;
}

double wrapped_sum_closed(double a, double psi) {
  const double th = std::tanh(a);
  const double s = std::sin(psi), co = std::cos(psi);
  return th / (kPi * (th * th * co * co + s * s));
}

OutcomeProbabilities outcome_probabilities(const KickModel& model) {
  model.validate();
  // Degenerate entries: the a -> 0 outcome is deterministic.
  if (model.theta == 0.0) return {1.0, 0.0, 0.0};
  if (model.theta == kPi) return {0.0, 1.0, 0.0};
  const double fu = wrapped_sum_closed(model.a, model.theta / 2.0);
  const double fd = wrapped_sum_closed(model.a, (model.theta - kPi) / 2.0);
  OutcomeProbabilities p;
  p.z = fu + fd;
  p.p_up = fu / p.z;
  p.p_down = 1.0 - p.p_up;
  return p;
}

KickExpectations conditional_kick_expectation_closed(double theta) {
  const double s = std::sin(theta / 2.0), c = std::cos(theta / 2.0);
  return {-s * c * c * c, -s * s * s * c};
}

namespace {

// sum_n (n*pi - psi) / (a^2 + (n*pi - psi)^2), +-n terms paired
double first_moment_sum(double a, double psi, long n_max) {
  double sum = -psi / (a * a + psi * psi);
  for (long n = 1; n <= n_max; ++n) {
    const double dm = n * kPi - psi;
    const double dp = -n * kPi - psi;
    sum += dm / (a * a + dm * dm) + dp / (a * a + dp * dp);
  }
  // paired tail terms behave as -2*psi/(n*pi)^2
  sum -= 2.0 * psi / (kPi * kPi * (n_max + 0.5));
  return sum;
}

}  // namespace

KickExpectations conditional_kick_expectation_numeric(const KickModel& model) {
  model.validate();
  const double psi_up = model.theta / 2.0;
  const double psi_down = (model.theta - kPi) / 2.0;
  const double z = wrapped_sum_numeric(model.a, psi_up, model.n_max) +
                   wrapped_sum_numeric(model.a, psi_down, model.n_max);
  const double pref = model.a / (z * kPi);
  return {pref * first_moment_sum(model.a, psi_up, model.n_max),
          pref * first_moment_sum(model.a, psi_down, model.n_max)};
}

Outcome classify_kick(double theta, double phi) {
  // UP branches are at integer multiples of pi in phi + theta/2; DOWN
  // branches at half-integer multiples.
  double r = (phi + theta / 2.0) / kPi;
  r -= std::floor(r);
  const double d_up = std::min(r, 1.0 - r);
  const double d_down = std::abs(r - 0.5);
  return d_up <= d_down ? Outcome::Up : Outcome::Down;
}

SelfAveragingReport self_averaging_test(double a, int batch, int repeats,
                                        std::uint64_t seed) {
  if (batch < 1 || repeats < 100)
    throw ValidationError("self_averaging_test: batch >= 1, repeats >= 100");
  constexpr std::uint64_t kTag = 0x4b49434bULL;
  SplitMix64 rng(substream_seed(seed, kTag, 0));

  std::vector<double> cauchy_means(repeats), cauchy_single(repeats);
  std::vector<double> gauss_means(repeats), gauss_single(repeats);
  auto normal = [&rng]() {
    const double u1 = rng.next_double(), u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  };
  for (int r = 0; r < repeats; ++r) {
    double sc = 0.0, sg = 0.0;
    for (int b = 0; b < batch; ++b) {
      sc += sample_cauchy(a, rng);
      sg += normal();
    }
    cauchy_means[r] = sc / batch;
    gauss_means[r] = sg / batch;
    cauchy_single[r] = sample_cauchy(a, rng);
    gauss_single[r] = normal();
  }

  SelfAveragingReport rep;
  rep.ks_cauchy = ks_two_sample(cauchy_means, cauchy_single);
  rep.ks_gauss = ks_two_sample(gauss_means, gauss_single);
  const double n_eff = static_cast<double>(repeats) / 2.0;
  rep.ks_critical_1pct = ks_critical(0.01, n_eff);
  rep.cauchy_passes = rep.ks_cauchy < rep.ks_critical_1pct;
  rep.gauss_fails = !(rep.ks_gauss < rep.ks_critical_1pct);
  return rep;
}

double angle_objective(OptimizeMode mode, double theta) {
  const KickExpectations e = conditional_kick_expectation_closed(theta);
  const double c2 = std::cos(theta / 2.0) * std::cos(theta / 2.0);
  const double s2 = std::sin(theta / 2.0) * std::sin(theta / 2.0);
  if (mode == OptimizeMode::Sorted) return std::abs(c2 * e.mean_up);
  return std::abs(c2 * e.mean_up + s2 * e.mean_down);
}

AngleOptimum optimize_entry_angle(OptimizeMode mode, int grid_points) {
  AngleOptimum opt;
  opt.thetas.reserve(grid_points + 1);
  opt.objective.reserve(grid_points + 1);
  int best = 0;
  for (int i = 0; i <= grid_points; ++i) {
    const double th = kPi * i / grid_points;
    opt.thetas.push_back(th);
    opt.objective.push_back(angle_objective(mode, th));
    if (opt.objective.back() > opt.objective[best]) best = i;
  }
  // golden-section refinement in the bracketing interval
  double lo = opt.thetas[std::max(0, best - 1)];
  double hi = opt.thetas[std::min(grid_points, best + 1)];
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = angle_objective(mode, x1), f2 = angle_objective(mode, x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = angle_objective(mode, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = angle_objective(mode, x1);
    }
  }
  opt.theta_star = 0.5 * (lo + hi);
  return opt;
}

CotResidual cot_identity_residual(double z_real, double z_imag, long n_max) {
  const std::complex<double> z(z_real, z_imag);
  const std::complex<double> sz = std::sin(z);
  if (std::abs(sz) < 1e-14)
    throw ValidationError("cot_identity_residual: z at a pole of cot");
  const std::complex<double> cot = std::cos(z) / sz;
  // paired sum: 1/z + sum_n 2z/(z^2 - (n*pi)^2)
  std::complex<double> sum = 1.0 / z;
  const std::complex<double> z2 = z * z;
  for (long n = 1; n <= n_max; ++n) {
    const double np = n * kPi;
    sum += 2.0 * z / (z2 - np * np);
  }
  const std::complex<double> diff = cot - sum;
  return {std::abs(diff.real()), std::abs(diff.imag())};
}

}  // namespace sslab
