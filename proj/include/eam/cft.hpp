#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eam::cft {

enum class GeometryKind { plane, circle, thermal, half_line, strip, thermal_half_line };

/// Roman-numeral label "I".."VI".
std::string to_string(GeometryKind k);
GeometryKind parse_geometry(std::string_view s);

/// One interval A in one of the six space-time geometries.
///   I   plane              A = (u, v)
///   II  circle of size L   A = (-R, R)
///   III thermal, beta      A = (-R, R) on the line
///   IV  half-line x > 0    A = (0, x0)
///   V   strip (-L, L)      A = (x0, L)
///   VI  thermal half-line  A = (0, x0)
struct Geometry {
  GeometryKind kind = GeometryKind::plane;
  double lo = 0.0;       // A = (lo, hi)
  double hi = 1.0;
  double size = 0.0;     // L for II and V, beta for III and VI
  double epsilon = 1e-3;

  static Geometry plane(double u, double v, double eps);
  static Geometry circle(double l, double r, double eps);
  static Geometry thermal(double beta, double r, double eps);
  static Geometry half_line(double x0, double eps);
  static Geometry strip(double l, double x0, double eps);
  static Geometry thermal_half_line(double beta, double x0, double eps);

  /// Throws std::invalid_argument when the interval or cutoff is out of range.
  void validate() const;
  double length() const { return hi - lo; }
  /// The regularized interval A_eps.
  std::pair<double, double> a_eps() const;
  /// Complement of A inside the spatial domain, as intervals (may be infinite).
  std::vector<std::pair<double, double>> complement() const;
};

struct Params {
  double c = 1.0;
  int n = 1;
  double c_n = 0.0;
  void validate() const;
};

/// The conformal map restricted to real x in A (additive constants dropped).
double f(const Geometry& g, double x);
double f_prime(const Geometry& g, double x);

/// Entanglement-current kernel; throws eam::Error at x == y.
double kernel_g(const Geometry& g, double x, double y);

/// Closed-form width, leading order in epsilon.
double conformal_width(const Geometry& g);
/// f(hi_eps) - f(lo_eps) without expanding in epsilon.
double exact_width(const Geometry& g);
/// W from numerical quadrature of f' over A_eps.
double quadrature_width(const Geometry& g);

/// S^(n) = (c/12)(1 + 1/n) W + C_n.
double renyi_entropy_cft(const Geometry& g, const Params& p);
/// s^(n)(x) = (c/12)(1 + 1/n) f'(x) + C_n / l.
double contour_ansatz(const Geometry& g, const Params& p, double x);
double contour_ansatz_integral(const Geometry& g, const Params& p);

struct KernelCheck {
  double f_prime = 0.0;
  double analytic = 0.0;    // closed-form antiderivative of g over the complement
  double quadrature = 0.0;  // Boost tanh-sinh / exp-sinh
  double quadrature_error = 0.0;
  double residual = 0.0;    // max |f' - route|
};

/// Compares f'(x) with the integral of g(x, .) over the complement of A.
/// Throws eam::ConvergenceError when the quadrature error estimate exceeds tol.
KernelCheck check_kernel_consistency(const Geometry& g, double x, double quadrature_tol = 1e-10);

/// (c/6)(pi/N)^2 / sin^2(pi r/N), 1 <= r <= N-1.
double lattice_conformal_J(int n_sites, int r, double c = 1.0);

struct TwoIntervalResult {
  double closed_form = 0.0;   // cutoff discarded
  double quadrature = 0.0;    // (c/6) double integral of 1/(x-y)^2 over A_eps x Abar
  double cutoff_term = 0.0;   // -(2c/3) ln eps
  double epsilon = 0.0;
  std::string note;
};

/// S of (u1, v1) u (u2, v2) on the line. The harmonic-ratio dependent term is
/// not modeled (see `note`).
double two_interval_entropy(double u1, double v1, double u2, double v2, double c = 1.0);
TwoIntervalResult two_interval_entropy_routes(double u1, double v1, double u2, double v2, double c,
                                              double epsilon);

}  // namespace eam::cft
