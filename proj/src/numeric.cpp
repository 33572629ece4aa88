#include "emtact/numeric.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>

namespace emtact {

double quantize_to(double v, double step) {
  double n = std::floor(std::abs(v) / step + 0.5);
  return std::copysign(n * step, v);
}

double lerp(double a, double b, double t) { return a + (b - a) * t; }

double clamp(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

std::string format_exact(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string format_sig6_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.6g", v);
  std::string s(buf);
  // "%#" keeps the point even with no fractional digits ("100000.");
  // drop it in that one case.
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

bool parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

std::uint64_t DeterministicRng::next_u64() {
  // splitmix64 (Steele, Lea, Flood 2014); public domain reference mix.
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double DeterministicRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double DeterministicRng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 shifted into (0, 1] so the log is finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace emtact
