#include "percolab/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "percolab/errors.hpp"
#include "percolab/special.hpp"

namespace percolab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("interior angle fraction must lie in (0,1), got " + std::to_string(alpha));
  }
}

void require_ratio(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("aspect ratio must be positive and finite, got " + std::to_string(r));
  }
}

// Root of a decreasing function on a bracket grown outward from a guess.
template <class F>
double solve_decreasing(const F& f, double guess, double lo_limit, double hi_limit, const char* what) {
  double step = 1.0;
  double lo = std::max(guess - step, lo_limit), hi = std::min(guess + step, hi_limit);
  double flo = f(lo), fhi = f(hi);
  while (flo < 0.0 && lo > lo_limit) {
    step *= 2.0;
    hi = lo;
    fhi = flo;
    lo = std::max(lo - step, lo_limit);
    flo = f(lo);
  }
  step = 1.0;
  while (fhi > 0.0 && hi < hi_limit) {
    step *= 2.0;
    lo = hi;
    flo = fhi;
    hi = std::min(hi + step, hi_limit);
    fhi = f(hi);
  }
  if (flo < 0.0 || fhi > 0.0) {
    throw NumericError(std::string(what) + ": root not bracketed",
                       "f(" + std::to_string(lo) + ")=" + std::to_string(flo) + " f(" +
                           std::to_string(hi) + ")=" + std::to_string(fhi));
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  std::uintmax_t iters = 200;
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                  boost::math::tools::eps_tolerance<double>(52), iters);
  if (iters >= 200) {
    throw NumericError(std::string(what) + ": root finder did not converge",
                       "bracket=[" + std::to_string(a) + "," + std::to_string(b) + "]");
  }
  return 0.5 * (a + b);
}

}  // namespace

CrossRatio CrossRatio::from_z(double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("cross-ratio must lie in [0,1], got " + std::to_string(z));
  return {z, 1.0 - z};
}

CrossRatio CrossRatio::from_complement(double zc) {
  if (!(zc >= 0.0 && zc <= 1.0)) throw DomainError("cross-ratio must lie in [0,1], got " + std::to_string(1.0 - zc));
  return {1.0 - zc, zc};
}

CrossRatio CrossRatio::from_log_tan(double u) {
  if (std::isnan(u)) throw DomainError("log tan θ0 is NaN");
  return {1.0 / (1.0 + std::exp(-2.0 * u)), 1.0 / (1.0 + std::exp(2.0 * u))};
}

double CrossRatio::theta0() const {
  return z_ <= 0.5 ? std::asin(std::sqrt(z_)) : kPi / 2 - std::asin(std::sqrt(zc_));
}

double CrossRatio::theta0_complement() const {
  return zc_ <= 0.5 ? std::asin(std::sqrt(zc_)) : kPi / 2 - std::asin(std::sqrt(z_));
}

double CrossRatio::log_tan() const { return 0.5 * (std::log(z_) - std::log(zc_)); }

double cardy(double z) { return cardy(CrossRatio::from_z(z)); }

double cardy(const CrossRatio& cr) {
  const double z = cr.z(), zc = cr.complement();
  if (z <= 0.5) return kCardyConstant * std::cbrt(z) * hyp2f1_cardy_series(z);
  return 1.0 - kCardyConstant * std::cbrt(zc) * hyp2f1_cardy_series(zc);
}

double cardy_derivative(double z) {
  const CrossRatio cr = CrossRatio::from_z(z);
  return kCardyConstant / 3.0 * std::pow(cr.z() * cr.complement(), -2.0 / 3.0);
}

ScSides sc_sides(double alpha, const CrossRatio& cr) {
  require_alpha(alpha);
  const double t = cr.theta0(), tc = cr.theta0_complement();
  if (!(t > 0.0 && tc > 0.0)) throw DomainError("degenerate cross-ratio (z = 0 or 1)");
  return {sine_power_integral(2 * t, 2 * tc, -alpha, alpha - 1.0),
          sine_power_integral(2 * tc, 2 * t, alpha - 1.0, -alpha)};
}

double sc_side_ratio(double alpha, const CrossRatio& z) {
  const ScSides s = sc_sides(alpha, z);
  return s.bottom / s.left;
}

double sc_left_arc(double alpha, const CrossRatio& cr, double t) {
  require_alpha(alpha);
  const double th = cr.theta0(), tc = cr.theta0_complement();
  return sine_power_integral(2 * th, 2 * tc, -alpha, alpha - 1.0, t + th);
}

double sc_bottom_arc(double alpha, const CrossRatio& cr, double t) {
  require_alpha(alpha);
  const double th = cr.theta0(), tc = cr.theta0_complement();
  return sine_power_integral(2 * tc, 2 * th, alpha - 1.0, -alpha, t - th);
}

CrossRatio rect_to_crossratio(double r) { return solve_parallelogram(0.5, r).z; }

double crossratio_to_rect(const CrossRatio& z) {
  if (z.z() == 0.0) return std::numeric_limits<double>::infinity();
  if (z.complement() == 0.0) return 0.0;
  return sc_side_ratio(0.5, z);
}

double cardy_rect(double r) { return cardy(rect_to_crossratio(r)); }

ParallelogramEquivalence solve_parallelogram(double alpha, double r) {
  require_alpha(alpha);
  require_ratio(r);
  const double target = std::log(r);
  auto f = [&](double u) {
    return std::log(sc_side_ratio(alpha, CrossRatio::from_log_tan(u))) - target;
  };
  // Near-rectangle asymptotics: u ≈ (π/2)(1/r - r).
  const double guess = std::clamp(kPi / 2 * (1.0 / r - r), -250.0, 250.0);
  const double u = solve_decreasing(f, guess, -300.0, 300.0, "parallelogram_to_rect");
  ParallelogramEquivalence eq;
  eq.alpha = alpha;
  eq.r = r;
  eq.z = CrossRatio::from_log_tan(u);
  eq.r0 = crossratio_to_rect(eq.z);
  return eq;
}

double parallelogram_to_rect(double alpha, double r) { return solve_parallelogram(alpha, r).r0; }

DiagonalSplit diagonal_split(double alpha, const CrossRatio& cr, DiagonalDefinition def) {
  const ScSides sides = sc_sides(alpha, cr);
  const double th = cr.theta0();
  DiagonalSplit out{};
  if (def == DiagonalDefinition::Second) {
    out.t_left = 0.0;
    out.t_bottom = kPi / 2;
    out.left_fraction = sc_left_arc(alpha, cr, 0.0) / sides.left;
    out.bottom_fraction = sc_bottom_arc(alpha, cr, kPi / 2) / sides.bottom;
    return out;
  }
  out.left_fraction = 0.5;
  out.bottom_fraction = 0.5;
  auto fl = [&](double t) { return 0.5 * sides.left - sc_left_arc(alpha, cr, t); };
  auto fb = [&](double t) { return 0.5 * sides.bottom - sc_bottom_arc(alpha, cr, t); };
  out.t_left = solve_decreasing(fl, 0.0, -th, th, "diagonal_split");
  out.t_bottom = solve_decreasing(fb, kPi / 2, th, kPi - th, "diagonal_split");
  return out;
}

double cardy_diagonal(double alpha, double r, DiagonalDefinition def) {
  const ParallelogramEquivalence eq = solve_parallelogram(alpha, r);
  const DiagonalSplit sp = diagonal_split(alpha, eq.z, def);
  const double th = eq.z.theta0();
  const double a1 = -th, a2 = sp.t_left, a3 = sp.t_bottom, a4 = kPi - th;
  const double eta = std::sin((a2 - a1) / 2) * std::sin((a4 - a3) / 2) /
                     (std::sin((a3 - a1) / 2) * std::sin((a4 - a2) / 2));
  return cardy(std::clamp(eta, 0.0, 1.0));
}

namespace {

// 1 - (u/v)² at u = P + D σ, expanded around the endpoint P so that the
// value stays accurate as σ -> 0 when P is a prevertex.
std::complex<double> one_minus_sq(std::complex<double> P, std::complex<double> D, std::complex<double> v,
                                  double sigma) {
  std::complex<double> c = P / v;
  std::complex<double> base;
  if (P == v || P == -v) {
    base = 0.0;
    c = P == v ? 1.0 : -1.0;
  } else {
    base = (1.0 - c) * (1.0 + c);
  }
  const std::complex<double> d = D / v;
  return base - 2.0 * c * d * sigma - d * d * sigma * sigma;
}

}  // namespace

std::complex<double> sc_segment(double alpha, std::complex<double> w0, std::complex<double> a,
                                std::complex<double> b) {
  require_alpha(alpha);
  if (std::abs(std::abs(w0) - 1.0) > 1e-12) throw DomainError("w0 must lie on the unit circle");
  if (std::abs(a) > 1.0 + 1e-12 || std::abs(b) > 1.0 + 1e-12) {
    throw DomainError("sc_map arguments must lie in the closed unit disk");
  }
  if (a == b) return 0.0;
  const std::complex<double> wb = std::conj(w0);
  const std::complex<double> D = b - a;
  auto integrand = [&](double x, double xc) {
    std::complex<double> g1, g2;
    if (xc < 0.0 || (xc == 0.0 && x < 0.5)) {
      const double s = xc < 0.0 ? -xc : x;
      g1 = one_minus_sq(a, D, w0, s);
      g2 = one_minus_sq(a, D, wb, s);
    } else {
      const double s = xc > 0.0 ? xc : 1.0 - x;
      g1 = one_minus_sq(b, -D, w0, s);
      g2 = one_minus_sq(b, -D, wb, s);
    }
    return std::pow(g1, alpha - 1.0) * std::pow(g2, -alpha);
  };
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  auto re = [&](double x, double xc) { return integrand(x, xc).real(); };
  auto im = [&](double x, double xc) { return integrand(x, xc).imag(); };
  double err_re = 0.0, err_im = 0.0;
  const double vr = ts.integrate(re, 0.0, 1.0, 1e-13, &err_re);
  const double vi = ts.integrate(im, 0.0, 1.0, 1e-13, &err_im);
  if (!std::isfinite(vr) || !std::isfinite(vi) || err_re > 1e-8 || err_im > 1e-8) {
    throw NumericError("sc_map quadrature failed",
                       "err=(" + std::to_string(err_re) + "," + std::to_string(err_im) + ")");
  }
  return D * std::complex<double>(vr, vi);
}

std::complex<double> sc_map(double alpha, std::complex<double> w0, std::complex<double> w) {
  return sc_segment(alpha, w0, 0.0, w);
}

void ShearMatrix::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("shear parameter a must be positive");
  if (!(theta > 0.0 && theta < kPi)) throw DomainError("shear angle must lie in (0,π)");
}

Eigen::Matrix2d ShearMatrix::inverse() const {
  Eigen::Matrix2d m;
  m << a * std::sin(theta), 0.0, -a * std::cos(theta), 1.0;
  return m;
}

double shear_equivalent_rect(const ShearMatrix& g, double r) {
  g.validate();
  require_ratio(r);
  // g^{-1} maps the rectangle's sides (r,0) and (0,1) to sides of lengths
  // a r and 1 meeting at angles θ and π - θ; the two are mirror images.
  const double angle = std::min(g.theta, kPi - g.theta);
  return parallelogram_to_rect(angle / kPi, g.a * r);
}

double side_ratio_scale(const ShearMatrix& g) {
  g.validate();
  const double c = g.a * std::cos(g.theta);
  return std::sqrt(1.0 + c * c) / (g.a * std::sin(g.theta));
}

CylinderDims annulus_to_cylinder(double r1, double r2, double scale) {
  if (!(r1 > 0.0 && r2 >= r1 && std::isfinite(r2))) throw DomainError("annulus requires 0 < r1 <= r2");
  if (!(scale > 0.0)) throw DomainError("scale must be positive");
  return {scale * std::log(r2 / r1), 2.0 * kPi * scale};
}

double cylinder_to_annulus_ratio(double width, double circumference) {
  if (!(width >= 0.0 && circumference > 0.0)) throw DomainError("cylinder needs width >= 0, circumference > 0");
  return std::exp(2.0 * kPi * width / circumference);
}

double annulus_exponent_prediction() { return 5.0 / 48.0; }

}  // namespace percolab
