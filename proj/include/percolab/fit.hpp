#pragma once

#include <istream>
#include <string>
#include <vector>

#include "percolab/conformal.hpp"

namespace percolab {

// One rectangle of side ratio r on the striated lattice with its estimated
// horizontal and vertical crossing probabilities. CIs are only needed for
// CI weighting.
struct StriatedRow {
  double r = 1.0;
  double pi_h = 0.5;
  double pi_v = 0.5;
  double ci_h = 0.0;
  double ci_v = 0.0;
};
using StriatedDataset = std::vector<StriatedRow>;

void validate_dataset(const StriatedDataset& data);

// Reads a CSV with a header naming at least r, pi_h and pi_v (ci_h, ci_v
// optional); other columns are ignored.
StriatedDataset read_striated_csv(std::istream& in);

// Exact Cardy values for a known shear, at the given side ratios.
StriatedDataset synthetic_striated_dataset(const ShearMatrix& g, const std::vector<double>& ratios);

enum class FitWeighting { Uniform, ConfidenceInterval };

struct FitOptions {
  FitWeighting weighting = FitWeighting::Uniform;
  double a_min = 0.2;
  double a_max = 3.0;
  int grid = 50;
  double tolerance = 1e-6;  // simplex size at convergence
  int max_iterations = 2000;
};

struct FitResult {
  double a = 1.0;
  double theta = 1.5707963267948966;  // in (0, π/2]
  double residual = 0.0;
  double theta_mirror = 1.5707963267948966;  // π - theta
  double residual_mirror = 0.0;
  int iterations = 0;
};

// Σ w_h [π̂_h − π_h(g, r)]² + w_v [π̂_v − (1 − π_h(g, r))]², where π_h(g, r)
// is Cardy at the rectangle equivalent to g⁻¹ applied to the r rectangle.
double shear_residual(const StriatedDataset& data, const ShearMatrix& g,
                      FitWeighting weighting = FitWeighting::Uniform);

// Coarse grid over [a_min, a_max] x (0, π) followed by Nelder-Mead.
FitResult fit_shear(const StriatedDataset& data, const FitOptions& opts = {});

// Parallelogram with vertices (0,0), (0,b), (c,d), (c,b+d) on the striated
// lattice, pulled back through g⁻¹.
struct ParallelogramPrediction {
  double alpha = 0.5;  // angle at the bottom-left corner over π
  double r = 1.0;      // bottom / left after the pull-back
  double r0 = 1.0;
  double pi_h = 0.5;
  double pi_v = 0.5;
};
ParallelogramPrediction predict_parallelogram(const ShearMatrix& g, double b, double c, double d);

struct ExponentPoint {
  double ratio = 2.0;
  double p_hat = 1.0;
};

struct ExponentFit {
  double exponent = 0.0;
  std::size_t used = 0;
  std::vector<std::string> warnings;
};

// Negated least-squares slope of ln p̂ against ln ratio. Points with p̂ = 0
// are dropped with a warning.
ExponentFit fit_annulus_exponent(const std::vector<ExponentPoint>& points);

}  // namespace percolab
