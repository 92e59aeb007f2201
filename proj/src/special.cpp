#include "percolab/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/sinc.hpp>

#include "percolab/errors.hpp"

namespace percolab {

double hyp2f1_cardy_series(double z) {
  constexpr double a = 1.0 / 3.0, b = 2.0 / 3.0, c = 4.0 / 3.0;
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 2000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) return sum;
  }
  throw NumericError("hypergeometric series did not converge", "z=" + std::to_string(z));
}

namespace {

constexpr double kQuadTol = 1e-14;

boost::math::quadrature::tanh_sinh<double>& integrator() {
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  return ts;
}

struct SinePower {
  double A, Ac, p, q;

  // sin(A - s) for 0 <= s <= A, taken through π - (A - s) = Ac + s when
  // that is the smaller argument.
  double sin_rest(double s) const {
    const double rest = A - s;
    return rest <= std::numbers::pi / 2 ? std::sin(rest) : std::sin(Ac + s);
  }
  double operator()(double s) const {
    return std::pow(2.0 * std::sin(s), p) * std::pow(2.0 * sin_rest(s), q);
  }
};

template <class F>
double integrate(const F& f, double a, double b) {
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  const double v = integrator().integrate(f, a, b, kQuadTol, &err, &l1, &levels);
  if (!std::isfinite(v) || err > 1e-9 * std::max(l1, 1e-300)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "interval=[%.17g,%.17g] error=%.3g l1=%.3g levels=%zu", a, b, err, l1, levels);
    throw NumericError("tanh-sinh quadrature failed", buf);
  }
  return v;
}

// Panels whose nearest singularity is at least one panel length away.
double smooth_panel(const SinePower& f, double a, double b) {
  // Mapped to [0,1]: the library's error estimate is not scale invariant.
  const double len = b - a;
  auto g = [&](double t) { return len * f(a + len * t); };
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 8, kQuadTol, &err);
  if (!std::isfinite(v) || err > 1e-11 * std::abs(v)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "interval=[%.17g,%.17g] error=%.3g", a, b, err);
    throw NumericError("Gauss-Kronrod quadrature failed", buf);
  }
  return v;
}

// ∫_0^S with S <= A/2: only the s = 0 endpoint is singular. The panel
// [0, w] is integrated after t = v^(1/(1+p)), which absorbs s^p; later
// panels double in length so the outside singularity at -Ac is always at
// least one panel length away.
double left_half(const SinePower& f, double S) {
  if (S <= 0.0) return 0.0;
  const double w = f.Ac < S ? f.Ac : S;
  const double k = 1.0 / (1.0 + f.p);
  auto regular = [&](double v, double) {
    const double s = w * std::pow(v, k);
    return std::pow(boost::math::sinc_pi(s), f.p) * std::pow(2.0 * f.sin_rest(s), f.q);
  };
  double total = std::pow(2.0, f.p) * std::pow(w, 1.0 + f.p) * k * integrate(regular, 0.0, 1.0);
  double lo = w;
  while (lo < S) {
    const double hi = std::min(2.0 * lo, S);
    total += smooth_panel(f, lo, hi);
    lo = hi;
  }
  return total;
}

}  // namespace

double sine_power_integral(double A, double Ac, double p, double q, double S) {
  if (!(A > 0.0 && Ac > 0.0 && p > -1.0 && q > -1.0 && p <= 0.0 && q <= 0.0)) {
    throw DomainError("sine_power_integral: bad parameters");
  }
  S = std::clamp(S, 0.0, A);
  const SinePower f{A, Ac, p, q};
  const double half = 0.5 * A;
  if (S <= half) return left_half(f, S);
  const SinePower mirrored{A, Ac, q, p};
  return left_half(f, half) + left_half(mirrored, half) - left_half(mirrored, A - S);
}

double sine_power_integral(double A, double Ac, double p, double q) {
  return sine_power_integral(A, Ac, p, q, A);
}

}  // namespace percolab
