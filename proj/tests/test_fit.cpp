#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "percolab/errors.hpp"
#include "percolab/fit.hpp"
#include "percolab/tables.hpp"

using namespace percolab;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> reference_ratios() {
  std::vector<double> r;
  for (const auto& row : striated_table()) r.push_back(row.r);
  return r;
}

}  // namespace

TEST(Fit, RecoversKnownShear) {
  const ShearMatrix truth{0.8, 0.3 * kPi};
  const auto data = synthetic_striated_dataset(truth, reference_ratios());
  const FitResult f = fit_shear(data);
  EXPECT_NEAR(f.a, truth.a, 1e-3);
  EXPECT_NEAR(f.theta, truth.theta, 1e-3);
  EXPECT_NEAR(f.theta_mirror, kPi - f.theta, 1e-15);
  EXPECT_NEAR(f.residual, f.residual_mirror, 1e-12);
  EXPECT_LT(f.residual, 1e-10);
}

TEST(Fit, ResidualIsMirrorSymmetric) {
  const auto data = synthetic_striated_dataset({1.1, 0.4 * kPi}, {0.5, 1.0, 2.0});
  for (double th : {0.1, 0.35, 0.49}) {
    EXPECT_NEAR(shear_residual(data, {0.9, th * kPi}), shear_residual(data, {0.9, (1 - th) * kPi}), 1e-12);
  }
  EXPECT_NEAR(shear_residual(data, {1.1, 0.4 * kPi}), 0.0, 1e-20);
}

TEST(Fit, ReferenceDataset) {
  std::ifstream in(std::string(PERCOLAB_TEST_DATA) + "/striated_table.csv");
  ASSERT_TRUE(in);
  const auto data = read_striated_csv(in);
  ASSERT_EQ(data.size(), 41u);
  const FitResult f = fit_shear(data);
  EXPECT_NEAR(f.a, 0.7538, 2e-3);
  EXPECT_NEAR(f.theta / kPi, 0.2643, 2e-3);
}

TEST(Fit, CsvParsing) {
  std::istringstream ok("# comment\n\nr,pi_h,pi_v,ci_h,ci_v\n1.0,0.5,0.5,0.01,0.01\n2.0,0.2,0.8,0.01,0.01\n\n# next\n");
  const auto data = read_striated_csv(ok);
  ASSERT_EQ(data.size(), 2u);
  EXPECT_EQ(data[1].pi_v, 0.8);
  EXPECT_EQ(data[0].ci_h, 0.01);
  std::istringstream missing("r,pi_h\n1,0.5\n");
  EXPECT_THROW(read_striated_csv(missing), DomainError);
  std::istringstream bad("r,pi_h,pi_v\n1,0.5,x\n2,0.2,0.8\n");
  EXPECT_THROW(read_striated_csv(bad), DomainError);
  std::istringstream range("r,pi_h,pi_v\n1,1.5,0.5\n2,0.2,0.8\n");
  EXPECT_THROW(read_striated_csv(range), DomainError);
  std::istringstream one("r,pi_h,pi_v\n1,0.5,0.5\n");
  EXPECT_THROW(read_striated_csv(one), DomainError);
}

TEST(Fit, CiWeightingNeedsIntervals) {
  const auto data = synthetic_striated_dataset({1.0, kPi / 2}, {0.5, 1.0, 2.0});
  FitOptions opts;
  opts.weighting = FitWeighting::ConfidenceInterval;
  EXPECT_THROW(fit_shear(data, opts), DomainError);
}

TEST(Fit, NonConvergenceReportsBestIterate) {
  const auto data = synthetic_striated_dataset({0.8, 0.3 * kPi}, {0.5, 1.0, 2.0});
  FitOptions opts;
  opts.max_iterations = 2;
  try {
    fit_shear(data, opts);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(e.diagnostics().find("best a="), std::string::npos);
  }
}

TEST(Predict, ShearedParallelogram) {
  const ShearMatrix g{0.75388, 0.26416 * kPi};
  const auto p = predict_parallelogram(g, 344, 833, 424);
  EXPECT_NEAR(p.r0, 1.348, 2e-3);
  EXPECT_NEAR(p.pi_h, 0.3477, 1e-3);
  EXPECT_NEAR(p.pi_h + p.pi_v, 1.0, 1e-15);
  EXPECT_THROW(predict_parallelogram(g, 0, 1, 0), DomainError);
}

TEST(Exponent, ExactPowerLaw) {
  std::vector<ExponentPoint> pts;
  for (double x : {2.0, 4.0, 8.0, 16.0}) pts.push_back({x, 0.9 * std::pow(x, -5.0 / 48)});
  const auto fit = fit_annulus_exponent(pts);
  EXPECT_NEAR(fit.exponent, 5.0 / 48, 1e-12);
  EXPECT_EQ(fit.used, 4u);
}

TEST(Exponent, ZerosDroppedWithWarning) {
  const auto fit = fit_annulus_exponent({{2, 0.5}, {4, 0.25}, {8, 0.0}});
  EXPECT_EQ(fit.used, 2u);
  EXPECT_EQ(fit.warnings.size(), 1u);
  EXPECT_NEAR(fit.exponent, 1.0, 1e-12);
  EXPECT_THROW(fit_annulus_exponent({{2, 0.5}, {4, 0.0}}), DomainError);
  EXPECT_THROW(fit_annulus_exponent({{2, 0.5}, {2, 0.4}}), DomainError);
  EXPECT_THROW(fit_annulus_exponent({{0.5, 0.5}, {2, 0.4}}), DomainError);
}
