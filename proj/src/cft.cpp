#include "eam/cft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "eam/error.hpp"

namespace eam::cft {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double coth(double z) { return 1.0 / std::tanh(z); }
double cot(double z) { return 1.0 / std::tan(z); }

// a = pi/L (II), pi/beta (III, VI), pi/(4L) (V); unused for I and IV.
double scale(const Geometry& g) {
  switch (g.kind) {
    case GeometryKind::circle:
    case GeometryKind::thermal:
    case GeometryKind::thermal_half_line:
      return kPi / g.size;
    case GeometryKind::strip:
      return kPi / (4.0 * g.size);
    default:
      return 0.0;
  }
}

// Antiderivative of kernel_g in y; exact limits at y = +-inf through IEEE arithmetic.
double antiderivative(const Geometry& g, double x, double y) {
  const double a = scale(g);
  switch (g.kind) {
    case GeometryKind::plane:
      return 1.0 / (x - y);
    case GeometryKind::circle:
      return a * cot(a * (x - y));
    case GeometryKind::thermal:
      return a * coth(a * (x - y));
    case GeometryKind::half_line:
      return 1.0 / (x - y) - 1.0 / (x + y);
    case GeometryKind::strip:
      return a * cot(a * (x - y)) + a * std::tan(a * (x + y));
    case GeometryKind::thermal_half_line:
      return a * coth(a * (x - y)) - a * coth(a * (x + y));
  }
  return 0.0;
}

struct Integral {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

template <class F>
Integral integrate_finite(F&& fn, double a, double b, double tol) {
  boost::math::quadrature::tanh_sinh<double> ts;
  Integral r;
  r.value = ts.integrate(fn, a, b, tol, &r.error, &r.l1);
  return r;
}

template <class F>
Integral integrate_interval(F&& fn, double a, double b, double tol, double span) {
  if (std::isfinite(a) && std::isfinite(b)) return integrate_finite(fn, a, b, tol);
  if (std::isinf(a) && std::isinf(b)) throw std::invalid_argument("doubly infinite interval");
  // Mirror (-inf, b) onto (-b, inf).
  auto mirrored = [&](double t) { return fn(-t); };
  const bool right = std::isfinite(a);
  const double start = right ? a : -b;
  auto body = [&](double t) { return right ? fn(t) : mirrored(t); };
  Integral head = integrate_finite(body, start, start + span, tol);
  boost::math::quadrature::exp_sinh<double> es;
  Integral tail;
  tail.value = es.integrate(body, start + span, kInf, tol, &tail.error, &tail.l1);
  return {head.value + tail.value, head.error + tail.error, head.l1 + tail.l1};
}

template <class F>
Integral integrate_over(F&& fn, const std::vector<std::pair<double, double>>& intervals, double tol,
                        double span) {
  Integral total;
  for (const auto& [a, b] : intervals) {
    const auto part = integrate_interval(fn, a, b, tol, span);
    total.value += part.value;
    total.error += part.error;
    total.l1 += part.l1;
  }
  return total;
}

void require_converged(const Integral& r, double tol, const char* what) {
  if (!(r.error <= tol * std::max(1.0, r.l1))) {
    throw ConvergenceError(std::string(what) + ": quadrature error estimate " + std::to_string(r.error) +
                           " exceeds tolerance");
  }
}

}  // namespace

std::string to_string(GeometryKind k) {
  switch (k) {
    case GeometryKind::plane: return "I";
    case GeometryKind::circle: return "II";
    case GeometryKind::thermal: return "III";
    case GeometryKind::half_line: return "IV";
    case GeometryKind::strip: return "V";
    case GeometryKind::thermal_half_line: return "VI";
  }
  return "?";
}

GeometryKind parse_geometry(std::string_view s) {
  static constexpr std::pair<std::string_view, GeometryKind> names[] = {
      {"I", GeometryKind::plane},       {"II", GeometryKind::circle},
      {"III", GeometryKind::thermal},   {"IV", GeometryKind::half_line},
      {"V", GeometryKind::strip},       {"VI", GeometryKind::thermal_half_line},
      {"plane", GeometryKind::plane},   {"circle", GeometryKind::circle},
      {"thermal", GeometryKind::thermal}, {"half-line", GeometryKind::half_line},
      {"strip", GeometryKind::strip},   {"thermal-half-line", GeometryKind::thermal_half_line}};
  for (const auto& [name, kind] : names) {
    if (name == s) return kind;
  }
  throw std::invalid_argument("unknown geometry '" + std::string(s) + "' (expected I..VI)");
}

Geometry Geometry::plane(double u, double v, double eps) {
  Geometry g{GeometryKind::plane, u, v, 0.0, eps};
  g.validate();
  return g;
}
Geometry Geometry::circle(double l, double r, double eps) {
  Geometry g{GeometryKind::circle, -r, r, l, eps};
  g.validate();
  return g;
}
Geometry Geometry::thermal(double beta, double r, double eps) {
  Geometry g{GeometryKind::thermal, -r, r, beta, eps};
  g.validate();
  return g;
}
Geometry Geometry::half_line(double x0, double eps) {
  Geometry g{GeometryKind::half_line, 0.0, x0, 0.0, eps};
  g.validate();
  return g;
}
Geometry Geometry::strip(double l, double x0, double eps) {
  Geometry g{GeometryKind::strip, x0, l, l, eps};
  g.validate();
  return g;
}
Geometry Geometry::thermal_half_line(double beta, double x0, double eps) {
  Geometry g{GeometryKind::thermal_half_line, 0.0, x0, beta, eps};
  g.validate();
  return g;
}

void Geometry::validate() const {
  if (!(hi > lo)) throw std::invalid_argument("interval must have positive length");
  if (!(epsilon > 0.0) || !(epsilon < 0.5 * length())) {
    throw std::invalid_argument("cutoff must satisfy 0 < eps < l/2");
  }
  switch (kind) {
    case GeometryKind::plane:
      break;
    case GeometryKind::circle:
      if (!(size > 0.0) || !(hi < 0.5 * size) || lo != -hi) throw std::invalid_argument("circle needs A = (-R, R) with 0 < R < L/2");
      break;
    case GeometryKind::thermal:
      if (!(size > 0.0) || lo != -hi) throw std::invalid_argument("thermal geometry needs beta > 0 and A = (-R, R)");
      break;
    case GeometryKind::half_line:
      if (lo != 0.0) throw std::invalid_argument("half-line geometry needs A = (0, x0)");
      break;
    case GeometryKind::strip:
      if (!(size > 0.0) || hi != size || !(lo > -size)) throw std::invalid_argument("strip needs A = (x0, L) with -L < x0 < L");
      break;
    case GeometryKind::thermal_half_line:
      if (!(size > 0.0) || lo != 0.0) throw std::invalid_argument("thermal half-line needs beta > 0 and A = (0, x0)");
      break;
  }
}

std::pair<double, double> Geometry::a_eps() const {
  switch (kind) {
    case GeometryKind::half_line:
    case GeometryKind::thermal_half_line:
      return {lo, hi - epsilon};
    case GeometryKind::strip:
      return {lo + epsilon, hi};
    default:
      return {lo + epsilon, hi - epsilon};
  }
}

std::vector<std::pair<double, double>> Geometry::complement() const {
  switch (kind) {
    case GeometryKind::plane:
    case GeometryKind::thermal:
      return {{-kInf, lo}, {hi, kInf}};
    case GeometryKind::circle:
      return {{hi, size - hi}};
    case GeometryKind::half_line:
    case GeometryKind::thermal_half_line:
      return {{hi, kInf}};
    case GeometryKind::strip:
      return {{-size, lo}};
  }
  return {};
}

void Params::validate() const {
  if (!(c > 0.0)) throw std::invalid_argument("central charge must be positive");
  if (n < 1) throw std::invalid_argument("Renyi order must be >= 1");
}

double f(const Geometry& g, double x) {
  const double a = scale(g);
  switch (g.kind) {
    case GeometryKind::plane:
      return std::log((x - g.lo) / (g.hi - x));
    case GeometryKind::circle:
      return std::log(std::sin(a * (x + g.hi)) / std::sin(a * (g.hi - x)));
    case GeometryKind::thermal:
      return std::log(std::sinh(a * (x + g.hi)) / std::sinh(a * (g.hi - x)));
    case GeometryKind::half_line:
      return std::log((x + g.hi) / (g.hi - x));
    case GeometryKind::strip:
      return std::log(std::sin(a * (x - g.lo)) / std::cos(a * (x + g.lo)));
    case GeometryKind::thermal_half_line:
      return std::log(std::sinh(a * (x + g.hi)) / std::sinh(a * (g.hi - x)));
  }
  return 0.0;
}

double f_prime(const Geometry& g, double x) {
  const double a = scale(g);
  switch (g.kind) {
    case GeometryKind::plane:
      return 1.0 / (x - g.lo) + 1.0 / (g.hi - x);
    case GeometryKind::circle:
      return a * (cot(a * (x + g.hi)) + cot(a * (g.hi - x)));
    case GeometryKind::thermal:
      return a * (coth(a * (x + g.hi)) + coth(a * (g.hi - x)));
    case GeometryKind::half_line:
      return 1.0 / (x + g.hi) + 1.0 / (g.hi - x);
    case GeometryKind::strip:
      return a * (cot(a * (x - g.lo)) + std::tan(a * (x + g.lo)));
    case GeometryKind::thermal_half_line:
      return a * (coth(a * (x + g.hi)) + coth(a * (g.hi - x)));
  }
  return 0.0;
}

double kernel_g(const Geometry& g, double x, double y) {
  if (x == y) throw Error("kernel g(x, y) is singular at x = y");
  const double a = scale(g);
  auto sq = [](double z) { return z * z; };
  switch (g.kind) {
    case GeometryKind::plane:
      return 1.0 / sq(x - y);
    case GeometryKind::circle:
      return sq(a) / sq(std::sin(a * (x - y)));
    case GeometryKind::thermal:
      return sq(a) / sq(std::sinh(a * (x - y)));
    case GeometryKind::half_line:
      return 1.0 / sq(x - y) + 1.0 / sq(x + y);
    case GeometryKind::strip:
      return sq(a) * (1.0 / sq(std::sin(a * (x - y))) + 1.0 / sq(std::cos(a * (x + y))));
    case GeometryKind::thermal_half_line:
      return sq(a) * (1.0 / sq(std::sinh(a * (x - y))) + 1.0 / sq(std::sinh(a * (x + y))));
  }
  return 0.0;
}

double conformal_width(const Geometry& g) {
  g.validate();
  const double l = g.length(), e = g.epsilon, s = g.size;
  switch (g.kind) {
    case GeometryKind::plane:
      return 2.0 * std::log(l / e);
    case GeometryKind::circle:
      return 2.0 * std::log(s / (kPi * e) * std::sin(kPi * l / s));
    case GeometryKind::thermal:
      return 2.0 * std::log(s / (kPi * e) * std::sinh(kPi * l / s));
    case GeometryKind::half_line:
      return std::log(2.0 * l / e);
    case GeometryKind::strip:
      return std::log(4.0 * s / (kPi * e) * std::sin(kPi * l / (2.0 * s)));
    case GeometryKind::thermal_half_line:
      return std::log(s / (kPi * e) * std::sinh(2.0 * kPi * l / s));
  }
  return 0.0;
}

double exact_width(const Geometry& g) {
  g.validate();
  const auto [a, b] = g.a_eps();
  return f(g, b) - f(g, a);
}

double quadrature_width(const Geometry& g) {
  g.validate();
  const auto [a, b] = g.a_eps();
  const auto r = integrate_finite([&](double x) { return f_prime(g, x); }, a, b, 1e-12);
  require_converged(r, 1e-9, "quadrature_width");
  return r.value;
}

double renyi_entropy_cft(const Geometry& g, const Params& p) {
  p.validate();
  return p.c / 12.0 * (1.0 + 1.0 / p.n) * conformal_width(g) + p.c_n;
}

double contour_ansatz(const Geometry& g, const Params& p, double x) {
  p.validate();
  return p.c / 12.0 * (1.0 + 1.0 / p.n) * f_prime(g, x) + p.c_n / g.length();
}

double contour_ansatz_integral(const Geometry& g, const Params& p) {
  g.validate();
  p.validate();
  const auto [a, b] = g.a_eps();
  const auto r = integrate_finite([&](double x) { return contour_ansatz(g, p, x); }, a, b, 1e-12);
  require_converged(r, 1e-9, "contour_ansatz_integral");
  return r.value;
}

KernelCheck check_kernel_consistency(const Geometry& g, double x, double quadrature_tol) {
  g.validate();
  const auto [a, b] = g.a_eps();
  if (!(x > a && x < b)) throw std::invalid_argument("x must lie strictly inside A_eps");
  KernelCheck out;
  out.f_prime = f_prime(g, x);
  for (const auto& [lo, hi] : g.complement()) {
    out.analytic += antiderivative(g, x, hi) - antiderivative(g, x, lo);
  }
  const auto q = integrate_over([&](double y) { return kernel_g(g, x, y); }, g.complement(), quadrature_tol,
                                std::max(1.0, g.length()));
  require_converged(q, std::max(quadrature_tol, 1e-12) * 100.0, "check_kernel_consistency");
  out.quadrature = q.value;
  out.quadrature_error = q.error;
  out.residual = std::max(std::abs(out.f_prime - out.analytic), std::abs(out.f_prime - out.quadrature));
  return out;
}

double lattice_conformal_J(int n_sites, int r, double c) {
  if (n_sites < 2 || r < 1 || r > n_sites - 1) throw std::invalid_argument("lattice_conformal_J needs 1 <= r <= N-1");
  const double s = std::sin(kPi * r / n_sites);
  return c / 6.0 * (kPi / n_sites) * (kPi / n_sites) / (s * s);
}

double two_interval_entropy(double u1, double v1, double u2, double v2, double c) {
  if (!(u1 < v1 && v1 < u2 && u2 < v2)) throw std::invalid_argument("two intervals need u1 < v1 < u2 < v2");
  const double num = std::abs(u1 - v1) * std::abs(u2 - v2) * std::abs(u1 - v2) * std::abs(u2 - v1);
  const double den = std::abs(u1 - u2) * std::abs(v1 - v2);
  return c / 3.0 * std::log(num / den);
}

TwoIntervalResult two_interval_entropy_routes(double u1, double v1, double u2, double v2, double c,
                                              double epsilon) {
  TwoIntervalResult r;
  r.closed_form = two_interval_entropy(u1, v1, u2, v2, c);
  if (!(epsilon > 0.0) || !(2.0 * epsilon < std::min(v1 - u1, v2 - u2))) {
    throw std::invalid_argument("cutoff must be below half of each interval length");
  }
  r.epsilon = epsilon;
  r.cutoff_term = -2.0 * c / 3.0 * std::log(epsilon);
  const std::vector<std::pair<double, double>> abar = {{-kInf, u1}, {v1, u2}, {v2, kInf}};
  const double span = std::max(1.0, v2 - u1);
  auto inner = [&](double x) {
    const auto q = integrate_over([x](double y) { return 1.0 / ((x - y) * (x - y)); }, abar, 1e-12, span);
    return q.value;
  };
  Integral outer;
  for (const auto& [a, b] : {std::pair{u1 + epsilon, v1 - epsilon}, std::pair{u2 + epsilon, v2 - epsilon}}) {
    const auto part = integrate_finite(inner, a, b, 1e-10);
    outer.value += part.value;
    outer.error += part.error;
    outer.l1 += part.l1;
  }
  require_converged(outer, 1e-8, "two_interval_entropy_routes");
  r.quadrature = c / 6.0 * outer.value;
  r.note =
      "cutoff discarded in closed_form; the additive term depending on the harmonic ratio and the operator "
      "content of the CFT is not modeled";
  return r;
}

}  // namespace eam::cft
