#pragma once

#include <complex>

#include <Eigen/Dense>

namespace percolab {

// Cross-ratio z = sin²θ0 of four boundary points. Both z and 1 - z are kept
// so that values near either end of [0,1] survive round trips.
class CrossRatio {
 public:
  CrossRatio() = default;
  static CrossRatio from_z(double z);
  static CrossRatio from_complement(double zc);
  // u = ln tan θ0, i.e. z = 1/(1 + e^{-2u}).
  static CrossRatio from_log_tan(double u);

  double z() const noexcept { return z_; }
  double complement() const noexcept { return zc_; }
  double theta0() const;             // in [0, π/2]
  double theta0_complement() const;  // π/2 - θ0
  double log_tan() const;
  CrossRatio swapped() const noexcept { return {zc_, z_}; }

 private:
  CrossRatio(double z, double zc) : z_(z), zc_(zc) {}
  double z_ = 0.5;
  double zc_ = 0.5;
};

// Cardy's crossing probability C z^{1/3} 2F1(1/3, 2/3; 4/3; z), evaluated as
// 1 - cardy(1 - z) for z > 1/2. DomainError outside [0,1].
double cardy(double z);
double cardy(const CrossRatio& z);
// Its derivative dπ/dz.
double cardy_derivative(double z);

// Rectangle of aspect ratio r = width/height <-> cross-ratio of its corners'
// preimages on the unit circle. Decreasing in r, with z(1/r) = 1 - z(r).
CrossRatio rect_to_crossratio(double r);
double crossratio_to_rect(const CrossRatio& z);
double cardy_rect(double r);

// Schwarz-Christoffel map of the unit disk onto a parallelogram with interior
// angle απ at φ(w0):
//   φ(w) = ∫_0^w (1 - u²/w0²)^{α-1} (1 - u²/w̄0²)^{-α} du.
// This differs from (u²-w0²)^{α-1}(u²-w̄0²)^{-α} only by a unit constant
// (a rotation of the image). Vertices: φ(w0) bottom-left, φ(w̄0) top-left,
// φ(-w0) top-right, φ(-w̄0) bottom-right.
std::complex<double> sc_map(double alpha, std::complex<double> w0, std::complex<double> w);
// ∫_a^b of the same integrand along the straight segment.
std::complex<double> sc_segment(double alpha, std::complex<double> w0, std::complex<double> a,
                                std::complex<double> b);

// Side lengths of the image for w0 = e^{iθ0}.
struct ScSides {
  double left;    // φ(w̄0) -> φ(w0)
  double bottom;  // φ(w0) -> φ(-w̄0)
};
ScSides sc_sides(double alpha, const CrossRatio& z);
double sc_side_ratio(double alpha, const CrossRatio& z);  // bottom / left

// Arc length along the left side from the top-left corner, and along the
// bottom side from the bottom-left corner, up to the boundary angle t.
double sc_left_arc(double alpha, const CrossRatio& z, double t);
double sc_bottom_arc(double alpha, const CrossRatio& z, double t);

struct ParallelogramEquivalence {
  double alpha = 0.5;
  double r = 1.0;
  CrossRatio z;     // θ0 with side ratio r
  double r0 = 1.0;  // aspect ratio of the conformally equivalent rectangle
};

// Parallelogram with angle απ between its bottom and left sides and
// bottom/left = r. Rotation does not enter.
ParallelogramEquivalence solve_parallelogram(double alpha, double r);
double parallelogram_to_rect(double alpha, double r);

// Crossing from the upper part of the left side to the right part of the
// bottom side. First: the geometric halves of the parallelogram's sides.
// Second: images of the halves of the equivalent rectangle's sides, i.e.
// the points φ(1) and φ(i).
enum class DiagonalDefinition { First, Second };

struct DiagonalSplit {
  double left_fraction;    // split point along the left side, from top-left
  double bottom_fraction;  // split point along the bottom side, from bottom-left
  double t_left;           // boundary angle of the left split point
  double t_bottom;         // boundary angle of the bottom split point
};
DiagonalSplit diagonal_split(double alpha, const CrossRatio& z, DiagonalDefinition def);
// Probability of the d event: Cardy at the cross-ratio of the two arcs.
double cardy_diagonal(double alpha, double r, DiagonalDefinition def);

// g^{-1} = [[a sinθ, 0], [-a cosθ, 1]].
struct ShearMatrix {
  double a = 1.0;
  double theta = 1.5707963267948966;

  void validate() const;
  Eigen::Matrix2d inverse() const;
};

double shear_equivalent_rect(const ShearMatrix& g, double r);
// B̂ = sqrt(1 + a² cos²θ) / (a sinθ).
double side_ratio_scale(const ShearMatrix& g);

struct CylinderDims {
  double width;
  double circumference;
};
// (A ln(r2/r1), 2πA).
CylinderDims annulus_to_cylinder(double r1, double r2, double scale);
// exp(2π width / circumference).
double cylinder_to_annulus_ratio(double width, double circumference);

// Decay exponent of the annulus crossing probability.
double annulus_exponent_prediction();

}  // namespace percolab
