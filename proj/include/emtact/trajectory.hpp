#pragma once

#include <string>

namespace emtact {

// What the user's hand is trying to do, as a position/velocity pair over
// time. The plant couples to it through the finger pad; "none" leaves the
// finger ballistic (gravity and field only).
//
// Text forms (scenario files and CLI):
//   none
//   hold:POS_MM
//   tap:START_MM:SPEED_MM_S:END_MM      constant-speed descent, then hold
//   sine:CENTER_MM:AMP_MM:FREQ_HZ
struct IntentTrajectory {
  enum class Kind { none, hold, tap, sine };

  Kind kind = Kind::none;
  double p0_mm = 0.0;     // hold/tap start, sine center
  double p1_mm = 0.0;     // tap end, sine amplitude
  double rate = 0.0;      // tap speed (mm/s, toward end), sine freq (Hz)
};

struct IntentSample {
  double pos_mm = 0.0;
  double vel_mm_s = 0.0;
};

IntentSample intent_at(const IntentTrajectory& tr, double t_s);

// Throws ParseError on malformed text, ParameterError on bad numbers
// (zero tap speed, negative frequency, ...).
IntentTrajectory parse_intent(const std::string& text);

std::string intent_to_string(const IntentTrajectory& tr);

}  // namespace emtact
