#include "percolab/fit.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "percolab/errors.hpp"

namespace percolab {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\"");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

double weight(double ci, FitWeighting w) { return w == FitWeighting::Uniform ? 1.0 : 1.0 / (ci * ci); }

// π_h for the rectangle pulled back through g⁻¹, memoised on (α, a r).
class ShearModel {
 public:
  double pi_h(const ShearMatrix& g, double r) {
    const double alpha = std::min(g.theta, kPi - g.theta) / kPi;
    const double s = g.a * r;
    const auto key = std::make_pair(alpha, s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const double p = cardy(solve_parallelogram(alpha, s).z);
    memo_.emplace(key, p);
    return p;
  }

 private:
  std::map<std::pair<double, double>, double> memo_;
};

double residual_with(ShearModel& model, const StriatedDataset& data, const ShearMatrix& g, FitWeighting w) {
  double sum = 0.0;
  for (const auto& row : data) {
    const double ph = model.pi_h(g, row.r);
    const double dh = row.pi_h - ph;
    const double dv = row.pi_v - (1.0 - ph);
    sum += weight(row.ci_h, w) * dh * dh + weight(row.ci_v, w) * dv * dv;
  }
  return sum;
}

// π_h as a function of ln(bottom/left) for one angle, tabulated through the
// forward map u = ln tan θ0 -> side ratio and interpolated in u.
class AngleTable {
 public:
  AngleTable(double alpha, double log_s_lo, double log_s_hi, int points) {
    // Side ratio falls as u grows. Roots beyond |u| = 300 are out of the
    // solver's range; there π_h is 0 or 1 to double precision anyway.
    double u_a = -300.0, u_b = 300.0;
    try {
      u_a = solve_parallelogram(alpha, std::exp(log_s_hi)).z.log_tan();
    } catch (const NumericError&) {
    }
    try {
      u_b = solve_parallelogram(alpha, std::exp(log_s_lo)).z.log_tan();
    } catch (const NumericError&) {
    }
    const double pad = 0.05 * (u_b - u_a) + 1e-3;
    u_a = std::max(u_a - pad, -300.0);
    u_b = std::min(u_b + pad, 300.0);
    for (int i = 0; i < points; ++i) {
      const double u = u_a + (u_b - u_a) * i / (points - 1);
      u_.push_back(u);
      log_s_.push_back(std::log(sc_side_ratio(alpha, CrossRatio::from_log_tan(u))));
    }
    // The side ratio decreases as θ0 grows; store increasing in ln s.
    if (log_s_.front() > log_s_.back()) {
      std::reverse(u_.begin(), u_.end());
      std::reverse(log_s_.begin(), log_s_.end());
    }
  }

  double pi_h(double log_s) const {
    auto it = std::lower_bound(log_s_.begin(), log_s_.end(), log_s);
    std::size_t k = static_cast<std::size_t>(it - log_s_.begin());
    k = std::clamp<std::size_t>(k, 1, log_s_.size() - 1);
    const double t = std::clamp((log_s - log_s_[k - 1]) / (log_s_[k] - log_s_[k - 1]), 0.0, 1.0);
    return cardy(CrossRatio::from_log_tan(u_[k - 1] + t * (u_[k] - u_[k - 1])));
  }

 private:
  std::vector<double> u_, log_s_;
};

struct Objective {
  ShearModel* model;
  const StriatedDataset* data;
  FitWeighting weighting;
};

double nm_objective(const gsl_vector* x, void* params) {
  const auto* o = static_cast<const Objective*>(params);
  const double a = gsl_vector_get(x, 0);
  const double theta = gsl_vector_get(x, 1);
  if (!(a > 1e-6) || !(theta > 1e-9) || !(theta < kPi - 1e-9)) return 1e30;
  return residual_with(*o->model, *o->data, {a, theta}, o->weighting);
}

}  // namespace

void validate_dataset(const StriatedDataset& data) {
  if (data.size() < 2) throw DomainError("a shear fit needs at least 2 rows");
  for (const auto& row : data) {
    if (!(row.r > 0.0) || !std::isfinite(row.r)) throw DomainError("side ratio must be positive");
    if (!is_probability(row.pi_h) || !is_probability(row.pi_v)) throw DomainError("estimates must lie in [0,1]");
  }
}

StriatedDataset read_striated_csv(std::istream& in) {
  std::string line;
  // Comment lines ('#') and blank lines may precede the header; the first
  // blank or comment line after it ends the table.
  bool found = false;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (!t.empty() && t[0] != '#') {
      found = true;
      break;
    }
  }
  if (!found) throw DomainError("dataset CSV has no header");
  const auto header = split_csv(line);
  auto column = [&](const char* name) {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };
  const int cr = column("r"), ch = column("pi_h"), cv = column("pi_v");
  const int cih = column("ci_h"), civ = column("ci_v");
  if (cr < 0 || ch < 0 || cv < 0) throw DomainError("dataset CSV needs columns r, pi_h and pi_v");
  StriatedDataset data;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') break;
    const auto cells = split_csv(line);
    auto get = [&](int c) {
      if (c < 0) return 0.0;
      if (c >= static_cast<int>(cells.size()))
        throw DomainError("dataset CSV line " + std::to_string(lineno) + " is short");
      try {
        return std::stod(cells[c]);
      } catch (const std::exception&) {
        throw DomainError("dataset CSV line " + std::to_string(lineno) + ": bad number '" + cells[c] + "'");
      }
    };
    data.push_back({get(cr), get(ch), get(cv), get(cih), get(civ)});
  }
  validate_dataset(data);
  return data;
}

StriatedDataset synthetic_striated_dataset(const ShearMatrix& g, const std::vector<double>& ratios) {
  g.validate();
  StriatedDataset out;
  for (double r : ratios) {
    const double ph = cardy_rect(shear_equivalent_rect(g, r));
    out.push_back({r, ph, 1.0 - ph, 0.0, 0.0});
  }
  return out;
}

double shear_residual(const StriatedDataset& data, const ShearMatrix& g, FitWeighting weighting) {
  g.validate();
  ShearModel model;
  return residual_with(model, data, g, weighting);
}

FitResult fit_shear(const StriatedDataset& data, const FitOptions& opts) {
  validate_dataset(data);
  if (!(opts.a_min > 0.0) || !(opts.a_max > opts.a_min)) throw DomainError("invalid a range for the fit grid");
  if (opts.grid < 2) throw DomainError("fit grid needs at least 2 points per axis");
  if (opts.weighting == FitWeighting::ConfidenceInterval) {
    for (const auto& row : data)
      if (!(row.ci_h > 0.0) || !(row.ci_v > 0.0)) throw DomainError("CI weighting needs positive ci_h and ci_v");
  }

  // Coarse grid. θ and π - θ give the same angle, so only half the θ
  // values need tables.
  double r_lo = data.front().r, r_hi = data.front().r;
  for (const auto& row : data) {
    r_lo = std::min(r_lo, row.r);
    r_hi = std::max(r_hi, row.r);
  }
  const double log_lo = std::log(opts.a_min * r_lo), log_hi = std::log(opts.a_max * r_hi);
  double best = INFINITY, best_a = 1.0, best_theta = kPi / 2;
  for (int j = 0; j < opts.grid; ++j) {
    const double theta = kPi * (j + 0.5) / opts.grid;
    if (theta > kPi / 2) break;
    const AngleTable table(theta / kPi, log_lo, log_hi, 160);
    for (int i = 0; i < opts.grid; ++i) {
      const double a = opts.a_min + (opts.a_max - opts.a_min) * i / (opts.grid - 1);
      double sum = 0.0;
      for (const auto& row : data) {
        const double ph = table.pi_h(std::log(a * row.r));
        const double dh = row.pi_h - ph, dv = row.pi_v - (1.0 - ph);
        sum += weight(row.ci_h, opts.weighting) * dh * dh + weight(row.ci_v, opts.weighting) * dv * dv;
      }
      if (sum < best) {
        best = sum;
        best_a = a;
        best_theta = theta;
      }
    }
  }

  ShearModel model;
  Objective obj{&model, &data, opts.weighting};
  gsl_multimin_function fn{&nm_objective, 2, &obj};
  gsl_vector* x = gsl_vector_alloc(2);
  gsl_vector* step = gsl_vector_alloc(2);
  gsl_vector_set(x, 0, best_a);
  gsl_vector_set(x, 1, best_theta);
  gsl_vector_set(step, 0, 0.5 * (opts.a_max - opts.a_min) / (opts.grid - 1));
  gsl_vector_set(step, 1, 0.5 * kPi / opts.grid);
  gsl_multimin_fminimizer* nm = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
  gsl_multimin_fminimizer_set(nm, &fn, x, step);
  int iter = 0, status = GSL_CONTINUE;
  while (status == GSL_CONTINUE && iter < opts.max_iterations) {
    ++iter;
    if (gsl_multimin_fminimizer_iterate(nm)) break;
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(nm), opts.tolerance);
  }
  FitResult res;
  res.a = gsl_vector_get(nm->x, 0);
  res.theta = gsl_vector_get(nm->x, 1);
  res.residual = nm->fval;
  res.iterations = iter;
  gsl_multimin_fminimizer_free(nm);
  gsl_vector_free(x);
  gsl_vector_free(step);
  if (status != GSL_SUCCESS) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "best a=%.9g theta=%.9g residual=%.6g after %d iterations", res.a, res.theta,
                  res.residual, iter);
    throw NumericError("shear fit did not converge", buf);
  }
  if (res.theta > kPi / 2) res.theta = kPi - res.theta;
  res.theta_mirror = kPi - res.theta;
  res.residual = residual_with(model, data, {res.a, res.theta}, opts.weighting);
  res.residual_mirror = residual_with(model, data, {res.a, res.theta_mirror}, opts.weighting);
  return res;
}

ParallelogramPrediction predict_parallelogram(const ShearMatrix& g, double b, double c, double d) {
  g.validate();
  if (!(b > 0.0) || !(c > 0.0)) throw DomainError("parallelogram needs b > 0 and c > 0");
  const Eigen::Matrix2d inv = g.inverse();
  const Eigen::Vector2d left = inv * Eigen::Vector2d(0.0, b);
  const Eigen::Vector2d bottom = inv * Eigen::Vector2d(c, d);
  ParallelogramPrediction p;
  const double cosang = std::clamp(left.dot(bottom) / (left.norm() * bottom.norm()), -1.0, 1.0);
  p.alpha = std::acos(cosang) / kPi;
  p.r = bottom.norm() / left.norm();
  p.r0 = parallelogram_to_rect(p.alpha, p.r);
  p.pi_h = cardy_rect(p.r0);
  p.pi_v = 1.0 - p.pi_h;
  return p;
}

ExponentFit fit_annulus_exponent(const std::vector<ExponentPoint>& points) {
  ExponentFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& pt : points) {
    if (!(pt.ratio > 1.0)) throw DomainError("annulus ratios must exceed 1");
    if (!is_probability(pt.p_hat)) throw DomainError("crossing estimates must lie in [0,1]");
    if (pt.p_hat == 0.0) {
      char buf[120];
      std::snprintf(buf, sizeof buf, "dropped ratio %g: zero crossing estimate", pt.ratio);
      fit.warnings.emplace_back(buf);
      continue;
    }
    const double x = std::log(pt.ratio), y = std::log(pt.p_hat);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++fit.used;
  }
  if (fit.used < 2) throw DomainError("exponent fit needs at least 2 usable points");
  const double n = static_cast<double>(fit.used);
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 0.0)) throw DomainError("exponent fit needs at least 2 distinct ratios");
  fit.exponent = -(n * sxy - sx * sy) / den;
  return fit;
}

}  // namespace percolab
