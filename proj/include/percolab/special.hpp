#pragma once

namespace percolab {

inline constexpr double kGammaOneThird = 2.6789385347077476337;
inline constexpr double kGammaTwoThirds = 1.3541179394264004169;
// 3 Γ(2/3) / Γ(1/3)^2
inline constexpr double kCardyConstant = 0.566046680363159700449670550463;

// Power series of 2F1(1/3, 2/3; 4/3; z). Intended for 0 <= z <= 1/2; stops
// once a term drops below 1e-16 of the partial sum.
double hyp2f1_cardy_series(double z);

// I(S) = ∫_0^S (2 sin s)^p (2 sin(A - s))^q ds for 0 <= S <= A < π,
// -1 < p, q <= 0. The caller passes Ac = π - A separately so that the
// integrand stays accurate when A is close to π (the nearest outside
// singularities sit at s = -Ac and s = A + Ac).
double sine_power_integral(double A, double Ac, double p, double q, double S);
double sine_power_integral(double A, double Ac, double p, double q);

}  // namespace percolab
