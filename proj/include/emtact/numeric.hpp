#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace emtact {

// Snap v to the nearest multiple of step, ties away from zero.
double quantize_to(double v, double step);

double lerp(double a, double b, double t);

double clamp(double v, double lo, double hi);

// Shortest decimal string that round-trips to the same double. Used for
// on-disk grids and LUTs where save -> load must be exact.
std::string format_exact(double v);

// 6 significant digits, trailing zeros trimmed ("%.6g"). Trace cells.
std::string format_sig6(double v);

// 6 significant digits, trailing zeros kept ("%#.6g" minus a dangling
// decimal point). Single-number CLI output: 1.0 prints as "1.00000".
std::string format_sig6_full(double v);

// from_chars wrapper over the full string_view. Returns false on any
// trailing garbage or empty input.
bool parse_double(std::string_view text, double& out);
bool parse_u64(std::string_view text, std::uint64_t& out);

// splitmix64 stream with a Box-Muller gaussian on top. Every draw depends
// only on the seed and call count, never on platform library internals.
class DeterministicRng {
 public:
  explicit DeterministicRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform();   // [0, 1)
  double gaussian();  // standard normal

 private:
  std::uint64_t state_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace emtact
