#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

namespace emtact {

// Reflected-light distance sensor. Intensity falls off as
//
//   s(d) = s_max / (1 + d / falloff_mm)^2
//
// over a 35 mm working range, read at 4800 Hz with a pure transport delay
// on the optical/ADC path. noise_sigma is additive gaussian noise on the
// intensity, applied per sample at read time (never to the calibration).
struct SensorModel {
  double s_max = 1.0;
  double falloff_mm = 10.0;
  double range_max_mm = 35.0;
  double resolution_mm = 0.2;
  double rate_hz = 4800.0;
  double latency_s = 0.0018;
  double noise_sigma = 0.0;
};

// Clean intensity at a true distance. Throws RangeError outside [0, range].
double intensity_of(const SensorModel& m, double d_mm);

// Dense monotone table mapping intensity back to distance. Built from the
// noise-free model at a pitch finer than the sensor resolution.
struct CalibrationLut {
  Eigen::VectorXd distances_mm;  // ascending, 0 .. range_max
  Eigen::VectorXd intensities;   // strictly descending
  double resolution_mm = 0.2;
};

CalibrationLut calibrate(const SensorModel& m);

struct DistanceReading {
  double distance_mm = 0.0;  // quantized to the sensor resolution
  bool saturated = false;    // intensity fell outside the calibrated span
};

// Inverse lookup: clamp intensity into the table span, interpolate the
// distance, snap to the resolution grid (ties away from zero).
DistanceReading distance_of(const CalibrationLut& lut, double intensity);

struct SensorSample {
  double t_s = 0.0;
  double distance_mm = 0.0;
  bool saturated = false;
};

// Sample a true-distance trajectory the way the hardware would: at sample
// time t the sensor reports the (noisy, quantized) distance that held at
// t - latency. Samples run at k / rate_hz for k in [0, duration * rate).
std::vector<SensorSample> sample_stream(
    const SensorModel& m, const std::function<double(double)>& true_distance,
    double duration_s, std::uint64_t seed);

}  // namespace emtact
