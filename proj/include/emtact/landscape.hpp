#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace emtact {

// Calibrated force field of the coil/magnet pair.
//
// forces_n(i, j) is the vertical force on the finger magnet at distance
// distances_mm(i) above the surface when the coil carries currents_a(j).
// Positive force pushes the finger away from the surface, negative pulls
// it in. Both axes are strictly ascending; every row is strictly
// increasing in current (more current, more repulsion). That monotonicity
// is what makes force -> current inversion well posed, so it is enforced
// at construction and a violation in a file is a load error.
struct ForceLandscape {
  Eigen::VectorXd distances_mm;
  Eigen::VectorXd currents_a;
  Eigen::MatrixXd forces_n;  // rows follow distances, cols follow currents
};

// Validates shape, ordering, monotonicity and the distance span; throws
// ValidationError with every violation listed.
ForceLandscape make_landscape(Eigen::VectorXd distances_mm,
                              Eigen::VectorXd currents_a,
                              Eigen::MatrixXd forces_n);

// Parameters of the synthetic bench model
//
//   F(d, I) = a * I * u - b * u^2,   u = 1 / (d + d0)^2
//
// i.e. a current-linear drive term against a current-independent
// attraction to the permanent magnet. Units: d in mm, I in A, F in N.
struct SyntheticLandscapeParams {
  double a = 100.0;
  double b = 5000.0;
  double d0_mm = 5.0;
  double d_min_mm = 0.0;
  double d_max_mm = 35.0;
  double d_step_mm = 0.5;
  double i_min_a = -2.0;
  double i_max_a = 2.0;
  double i_step_a = 0.1;
  double noise_sigma_n = 0.0;  // gaussian measurement noise on each cell
  std::uint64_t seed = 0;
};

double synthetic_force(const SyntheticLandscapeParams& p, double d_mm,
                       double current_a);

ForceLandscape generate_landscape(const SyntheticLandscapeParams& p);

// Bilinear interpolation inside the grid. Queries outside either axis span
// throw RangeError naming the axis.
double force_at(const ForceLandscape& g, double d_mm, double current_a);

struct CurrentSolution {
  double current_a = 0.0;
  bool saturated = false;
  double achieved_force_n = 0.0;  // force actually produced at current_a
};

// Bisection on the (monotone) interpolated force row at d_mm. When the
// target is reachable, |achieved - target| <= 1e-6 N. When it is not, the
// result is the clamped boundary current with saturated set; control loops
// want that, not an exception.
CurrentSolution solve_current(const ForceLandscape& g, double d_mm,
                              double target_force_n);

// Throwing variant for one-shot queries: SaturationError when out of reach.
double invert_current(const ForceLandscape& g, double d_mm,
                      double target_force_n);

// The passive surface: current per grid distance that nulls the net force,
// so a finger resting anywhere on the curve feels nothing.
struct ZeroForceCurve {
  Eigen::VectorXd distances_mm;
  Eigen::VectorXd currents_a;
};

ZeroForceCurve zero_force_curve(const ForceLandscape& g);

// Linear interpolation along the curve, clamped at the ends.
double zero_current_at(const ZeroForceCurve& c, double d_mm);

struct MpsrResult {
  double force_n = 0.0;           // the guaranteed ceiling
  double binding_distance_mm = 0.0;  // where the field is weakest
};

// Maximum positive force the field can guarantee everywhere in
// [d_min, d_max]: min over distance of max over current of max(F, 0).
// The minimum over the bilinear field is attained at a grid distance or a
// range endpoint, so those are the candidates scanned.
MpsrResult mpsr(const ForceLandscape& g, double d_min_mm, double d_max_mm);

// CSV with a "d_mm\I_a" corner cell, current header row, one row per
// distance. Values are shortest-round-trip formatted: save -> load -> save
// is byte-identical.
void save_landscape(const ForceLandscape& g, std::ostream& out);
void save_landscape(const ForceLandscape& g, const std::string& path);
ForceLandscape load_landscape(std::istream& in);
ForceLandscape load_landscape(const std::string& path);

// Two-column CSV (d_mm,I0_a) of the zero-force curve.
void save_zero_curve(const ZeroForceCurve& c, std::ostream& out);

}  // namespace emtact
