#pragma once

#include <Eigen/Dense>
#include <vector>

namespace sslab {

using Vec3 = Eigen::Vector3d;

// Finite two-wire current loop standing in for the Stern-Gerlach magnet:
// straight wires at x = +-s running y in [-L/2, L/2], closed by
// semicircles of radius s at each end, all in the z = 0 plane. Current
// circulates clockwise as seen from +z. SI units.
struct WireLoop {
  double s = 0.01;  // half-separation, m
  double L = 0.1;   // straight-wire length, m
  double I = 1.0;   // current, A

  void validate() const;
};

inline constexpr double kMu0 = 4e-7 * 3.14159265358979323846;
inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kBohrMagneton = 9.2740100783e-24;  // J/T
inline constexpr double kElectronVolt = 1.602176634e-19;   // J

// Closed-form field of the two straight wires at (0, y, z), z > 0.
// Pure z component by symmetry.
Vec3 straight_wire_field(const WireLoop& loop, double y, double z);

// d B / d x at x = 0 for the straight wires; pure x component.
Vec3 straight_wire_gradient_x(const WireLoop& loop, double y, double z);

// Published closed form for the x component of the entry-semicircle
// field at x = 0, as a function of y_bar = y + L/2. Note: direct
// quadrature of the Biot-Savart integrand gives exactly zero for this
// component at x = 0 (the integrand is odd across the x = 0 plane);
// the closed form is kept as the reference expression the maximum
// analysis below is built on.
double semicircle_bx(const WireLoop& loop, double y_bar, double z);

// Dimensionless bracket of the semicircle field,
// 4/sqrt(u^2 + v^2 + 1) - 4/sqrt((u + v)^2 + 1) with u = y_bar/z,
// v = s/z.
double semicircle_bracket(double u, double v);

struct BracketMaximum {
  double s_over_z = 0.0;
  double value = 0.0;
  double y_bar_over_z = 0.0;
};

// For each s/z in the grid, maximize the bracket over y_bar/z > 0 and
// return the best grid entry.
BracketMaximum bracket_maximum(const std::vector<double>& s_over_z_grid);

// Composite-Simpson Biot-Savart quadrature over the full four-piece
// contour, n_nodes panels per piece. Standard inverse-square law.
Vec3 biot_savart_quadrature(const WireLoop& loop, const Vec3& R,
                            int n_nodes);

// Quadrature restricted to the two semicircles.
Vec3 semicircle_quadrature(const WireLoop& loop, const Vec3& R, int n_nodes);

struct KickEstimate {
  double delta_t = 0.0;        // s
  double B_required = 0.0;     // T, hbar/(mu_B * delta_t)
  double B_delta_t = 0.0;      // T s, equals hbar/mu_B
  double E_field = 0.0;        // V/m, L * B / delta_t
  double photon_energy_eV = 0.0;  // hbar/delta_t in eV
};

KickEstimate kick_estimates(double delta_t, double length_scale = 0.1);

}  // namespace sslab
