#include "sslab/fields.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "sslab/decay.hpp"  // error types

namespace sslab {

namespace {
constexpr double kPi = std::numbers::pi;
}

void WireLoop::validate() const {
  if (!(s > 0.0) || !(L > 0.0))
    throw ValidationError("WireLoop: s and L must be > 0");
  if (I == 0.0) throw ValidationError("WireLoop: current must be nonzero");
}

Vec3 straight_wire_field(const WireLoop& loop, double y, double z) {
  loop.validate();
  if (!(z > 0.0))
    throw ValidationError("straight_wire_field: trajectory requires z > 0");
  const double b = std::sqrt(loop.s * loop.s + z * z);
  const double t2 = (-y + loop.L / 2.0) / b;
  const double t1 = (-y - loop.L / 2.0) / b;
  const double sin2 = t2 / std::sqrt(1.0 + t2 * t2);
  const double sin1 = t1 / std::sqrt(1.0 + t1 * t1);
  const double bz = kMu0 / (4.0 * kPi) *
                    (-2.0 * loop.I * loop.s / (loop.s * loop.s + z * z)) *
                    (sin2 - sin1);
  return {0.0, 0.0, bz};
}

Vec3 straight_wire_gradient_x(const WireLoop& loop, double y, double z) {
  loop.validate();
  if (!(z > 0.0))
    throw ValidationError("straight_wire_gradient_x: requires z > 0");
  const double b2 = loop.s * loop.s + z * z;
  auto A = [b2](double lambda) {
    return lambda * (2.0 * lambda * lambda + 3.0 * b2) /
           (b2 * b2 * std::pow(lambda * lambda + b2, 1.5));
  };
  const double lp = loop.L / 2.0 - y;
  const double lm = -loop.L / 2.0 - y;
  const double gx =
      -kMu0 * loop.I / (4.0 * kPi) * 2.0 * loop.s * z * (A(lp) - A(lm));
  return {gx, 0.0, 0.0};
}

double semicircle_bx(const WireLoop& loop, double y_bar, double z) {
  loop.validate();
  if (!(z > 0.0)) throw ValidationError("semicircle_bx: requires z > 0");
  const double s = loop.s;
  return kMu0 * loop.I / kPi *
         (1.0 / std::sqrt(y_bar * y_bar + s * s + z * z) -
          1.0 / std::sqrt((y_bar + s) * (y_bar + s) + z * z));
}

double semicircle_bracket(double u, double v) {
  return 4.0 / std::sqrt(u * u + v * v + 1.0) -
         4.0 / std::sqrt((u + v) * (u + v) + 1.0);
}

namespace {

double max_over_u(double v, double* u_star) {
  // coarse scan then golden-section refinement
  double best_u = 0.0, best = -1e300;
  for (int i = 1; i <= 1000; ++i) {
    const double u = 0.01 * i;
    const double f = semicircle_bracket(u, v);
    if (f > best) {
      best = f;
      best_u = u;
    }
  }
  double lo = std::max(0.0, best_u - 0.01), hi = best_u + 0.01;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  while (hi - lo > 1e-12) {
    const double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    if (semicircle_bracket(x1, v) < semicircle_bracket(x2, v))
      lo = x1;
    else
      hi = x2;
  }
  *u_star = 0.5 * (lo + hi);
  return semicircle_bracket(*u_star, v);
}

}  // namespace

BracketMaximum bracket_maximum(const std::vector<double>& s_over_z_grid) {
  if (s_over_z_grid.empty())
    throw ValidationError("bracket_maximum: empty grid");
  BracketMaximum out;
  out.value = -1e300;
  for (double v : s_over_z_grid) {
    if (!(v > 0.0))
      throw ValidationError("bracket_maximum: grid must be positive");
    double u = 0.0;
    const double f = max_over_u(v, &u);
    if (f > out.value) {
      out.value = f;
      out.s_over_z = v;
      out.y_bar_over_z = u;
    }
  }
  return out;
}

namespace {

// One smooth contour piece r(t), t in [0,1], integrated by composite
// Simpson with n panels.
Vec3 integrate_piece(const std::function<Vec3(double)>& r,
                     const std::function<Vec3(double)>& dr, const Vec3& R,
                     int n, double min_dist) {
  auto f = [&](double t) -> Vec3 {
    const Vec3 d = R - r(t);
    const double dist = d.norm();
    if (dist < min_dist)
      throw ValidationError("biot_savart_quadrature: point on contour");
    return dr(t).cross(d) / (dist * dist * dist);
  };
  const double h = 1.0 / n;
  Vec3 acc = Vec3::Zero();
  for (int i = 0; i < n; ++i) {
    const double a = i * h;
    acc += (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h)) * (h / 6.0);
  }
  return acc;
}

}  // namespace

Vec3 semicircle_quadrature(const WireLoop& loop, const Vec3& R, int n_nodes) {
  loop.validate();
  const double s = loop.s, L = loop.L;
  const double min_dist = 1e-9 * s;
  // entry semicircle, traversed (s,-L/2) -> (-s,-L/2), bulging to -y
  auto r_left = [s, L](double t) {
    const double psi = kPi * (1.0 - t);
    return Vec3{-s * std::cos(psi), -L / 2.0 - s * std::sin(psi), 0.0};
  };
  auto dr_left = [s](double t) {
    const double psi = kPi * (1.0 - t);
    return Vec3{-kPi * s * std::sin(psi), kPi * s * std::cos(psi), 0.0};
  };
  // exit semicircle, traversed (-s,L/2) -> (s,L/2), bulging to +y
  auto r_right = [s, L](double t) {
    const double psi = kPi * t;
    return Vec3{-s * std::cos(psi), L / 2.0 + s * std::sin(psi), 0.0};
  };
  auto dr_right = [s](double t) {
    const double psi = kPi * t;
    return Vec3{kPi * s * std::sin(psi), kPi * s * std::cos(psi), 0.0};
  };
  Vec3 b = integrate_piece(r_left, dr_left, R, n_nodes, min_dist) +
           integrate_piece(r_right, dr_right, R, n_nodes, min_dist);
  return kMu0 * loop.I / (4.0 * kPi) * b;
}

Vec3 biot_savart_quadrature(const WireLoop& loop, const Vec3& R,
                            int n_nodes) {
  loop.validate();
  const double s = loop.s, L = loop.L;
  const double min_dist = 1e-9 * s;
  // wire at x = +s carries current toward -y (clockwise from +z)
  auto r_top = [s, L](double t) { return Vec3{s, L / 2.0 - t * L, 0.0}; };
  auto dr_top = [L](double) { return Vec3{0.0, -L, 0.0}; };
  auto r_bot = [s, L](double t) { return Vec3{-s, -L / 2.0 + t * L, 0.0}; };
  auto dr_bot = [L](double) { return Vec3{0.0, L, 0.0}; };
  Vec3 b = integrate_piece(r_top, dr_top, R, n_nodes, min_dist) +
           integrate_piece(r_bot, dr_bot, R, n_nodes, min_dist);
  return kMu0 * loop.I / (4.0 * kPi) * b + semicircle_quadrature(loop, R, n_nodes);
}

KickEstimate kick_estimates(double delta_t, double length_scale) {
  if (!(delta_t > 0.0))
    throw ValidationError("kick_estimates: delta_t must be > 0");
  KickEstimate e;
  e.delta_t = delta_t;
  e.B_delta_t = kHbar / kBohrMagneton;
  e.B_required = e.B_delta_t / delta_t;
  e.E_field = length_scale * e.B_required / delta_t;
  e.photon_energy_eV = kHbar / delta_t / kElectronVolt;
  return e;
}

}  // namespace sslab
