#pragma once

#include <span>

namespace percolab {

// Published reference values used by the CLI defaults and the tests.

// Rectangles on the square lattice: width, height, rounded r, Cardy value
// and the measured π_h, π_v, π_hv.
struct RectTableRow {
  int width;
  int height;
  double r;
  double pi_h_cft;
  double pi_h;
  double pi_v;
  double pi_hv;
};
std::span<const RectTableRow> rect_table();

// Rectangles of side ratio r on the striated lattice.
struct StriatedTableRow {
  double r;
  double r0;
  double pi_h;
  double pi_h_cft;
  double pi_v;
  double pi_v_cft;
};
std::span<const StriatedTableRow> striated_table();

// Parallelograms (0,0), (0,b), (c,d), (c,b+d) on the striated lattice whose
// pull-back is equivalent to an r0 rectangle.
struct ShearedParallelogramRow {
  int b, c, d;
  double r0;
  double pi_h;
  double pi_h_cft;
};
std::span<const ShearedParallelogramRow> sheared_parallelogram_table();

// Interior angle 3π/8 parallelograms on the striated lattice; r is the side
// ratio after the shear and r0 the equivalent rectangle.
struct StriatedParallelogramRow {
  int b, c, d;
  double r;
  double r0;
  double pi_h;
  double pi_h_cft;
};
std::span<const StriatedParallelogramRow> striated_parallelogram_table();

// Side ratios (bottom/left) of the parallelogram runs with their Cardy
// values, for α = 1/2, 3/8, 1/4, 1/8.
struct ParallelogramTableRow {
  double r;
  double pi_h_cft;
};
// alpha must be one of 1/2, 3/8, 1/4, 1/8 (DomainError otherwise).
std::span<const ParallelogramTableRow> parallelogram_table(double alpha);

}  // namespace percolab
