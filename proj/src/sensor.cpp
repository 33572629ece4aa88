#include "emtact/sensor.hpp"

#include <cmath>

#include "emtact/errors.hpp"
#include "emtact/numeric.hpp"

namespace emtact {

double intensity_of(const SensorModel& m, double d_mm) {
  if (!(d_mm >= 0.0 && d_mm <= m.range_max_mm))
    throw RangeError("distance", d_mm, 0.0, m.range_max_mm);
  double r = 1.0 + d_mm / m.falloff_mm;
  return m.s_max / (r * r);
}

CalibrationLut calibrate(const SensorModel& m) {
  if (!(m.range_max_mm > 0.0)) throw ParameterError("sensor range must be > 0");
  if (!(m.resolution_mm > 0.0))
    throw ParameterError("sensor resolution must be > 0");
  if (!(m.falloff_mm > 0.0)) throw ParameterError("sensor falloff must be > 0");
  if (!(m.s_max > 0.0)) throw ParameterError("sensor s_max must be > 0");

  // Table pitch: a quarter of the output resolution, so interpolation
  // error is far below the quantization step.
  double pitch = m.resolution_mm / 4.0;
  auto n = static_cast<Eigen::Index>(std::ceil(m.range_max_mm / pitch)) + 1;

  CalibrationLut lut;
  lut.resolution_mm = m.resolution_mm;
  lut.distances_mm.resize(n);
  lut.intensities.resize(n);
  SensorModel clean = m;
  clean.noise_sigma = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    double d = std::min(m.range_max_mm, static_cast<double>(k) * pitch);
    lut.distances_mm(k) = d;
    lut.intensities(k) = intensity_of(clean, d);
  }
  return lut;
}

DistanceReading distance_of(const CalibrationLut& lut, double intensity) {
  Eigen::Index n = lut.intensities.size();
  double s_hi = lut.intensities(0);       // at d = 0
  double s_lo = lut.intensities(n - 1);   // at full range

  DistanceReading out;
  if (intensity >= s_hi) {
    out.saturated = intensity > s_hi;
    out.distance_mm = lut.distances_mm(0);
    return out;
  }
  if (intensity <= s_lo) {
    out.saturated = intensity < s_lo;
    out.distance_mm =
        quantize_to(lut.distances_mm(n - 1), lut.resolution_mm);
    return out;
  }

  // intensities descend with distance; find the bracketing pair.
  Eigen::Index lo = 0;
  Eigen::Index hi = n - 1;
  while (hi - lo > 1) {
    Eigen::Index mid = (lo + hi) / 2;
    if (lut.intensities(mid) >= intensity)
      lo = mid;
    else
      hi = mid;
  }
  double t = (intensity - lut.intensities(lo)) /
             (lut.intensities(hi) - lut.intensities(lo));
  double d = lerp(lut.distances_mm(lo), lut.distances_mm(hi), t);
  out.distance_mm = quantize_to(d, lut.resolution_mm);
  return out;
}

std::vector<SensorSample> sample_stream(
    const SensorModel& m, const std::function<double(double)>& true_distance,
    double duration_s, std::uint64_t seed) {
  if (!(m.rate_hz > 0.0)) throw ParameterError("sensor rate must be > 0");
  if (!(duration_s > 0.0)) throw ParameterError("duration must be > 0");

  CalibrationLut lut = calibrate(m);
  DeterministicRng rng(seed);

  // Samples at k / rate for k in [0, duration * rate): a 1 s run at
  // 4800 Hz is exactly 4800 samples.
  auto count =
      static_cast<long long>(std::ceil(duration_s * m.rate_hz - 1e-9));

  std::vector<SensorSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    double t = static_cast<double>(k) / m.rate_hz;
    // The reading that arrives at t was taken latency seconds ago; before
    // the pipeline fills, the first physical reading holds.
    double d_true = true_distance(std::max(0.0, t - m.latency_s));
    double s = intensity_of(m, clamp(d_true, 0.0, m.range_max_mm));
    if (m.noise_sigma > 0.0) s += m.noise_sigma * rng.gaussian();
    DistanceReading r = distance_of(lut, s);
    out.push_back({t, r.distance_mm, r.saturated});
  }
  return out;
}

}  // namespace emtact
