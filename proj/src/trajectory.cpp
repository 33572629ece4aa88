#include "emtact/trajectory.hpp"

#include <cmath>
#include <vector>

#include "emtact/errors.hpp"
#include "emtact/numeric.hpp"

namespace emtact {

IntentSample intent_at(const IntentTrajectory& tr, double t_s) {
  switch (tr.kind) {
    case IntentTrajectory::Kind::none:
      return {0.0, 0.0};
    case IntentTrajectory::Kind::hold:
      return {tr.p0_mm, 0.0};
    case IntentTrajectory::Kind::tap: {
      // Constant-speed run from p0 toward p1, then hold at p1.
      double dir = tr.p1_mm >= tr.p0_mm ? 1.0 : -1.0;
      double travel = std::abs(tr.p1_mm - tr.p0_mm);
      double t_arrive = travel / tr.rate;
      if (t_s >= t_arrive) return {tr.p1_mm, 0.0};
      return {tr.p0_mm + dir * tr.rate * t_s, dir * tr.rate};
    }
    case IntentTrajectory::Kind::sine: {
      double w = 2.0 * 3.14159265358979323846 * tr.rate;
      return {tr.p0_mm + tr.p1_mm * std::sin(w * t_s),
              tr.p1_mm * w * std::cos(w * t_s)};
    }
  }
  return {0.0, 0.0};
}

namespace {

std::vector<std::string> split_fields(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t colon = text.find(':', start);
    if (colon == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }
}

double field_value(const std::vector<std::string>& fields, std::size_t i,
                   const std::string& text) {
  double v = 0.0;
  if (!parse_double(fields[i], v))
    throw ParseError("bad number '" + fields[i] + "' in intent '" + text +
                     "'");
  return v;
}

}  // namespace

IntentTrajectory parse_intent(const std::string& text) {
  auto fields = split_fields(text);
  const std::string& head = fields[0];
  IntentTrajectory tr;

  if (head == "none") {
    if (fields.size() != 1) throw ParseError("intent 'none' takes no fields");
    tr.kind = IntentTrajectory::Kind::none;
    return tr;
  }
  if (head == "hold") {
    if (fields.size() != 2)
      throw ParseError("intent 'hold' needs hold:POS_MM, got '" + text + "'");
    tr.kind = IntentTrajectory::Kind::hold;
    tr.p0_mm = field_value(fields, 1, text);
    return tr;
  }
  if (head == "tap") {
    if (fields.size() != 4)
      throw ParseError("intent 'tap' needs tap:START:SPEED:END, got '" + text +
                       "'");
    tr.kind = IntentTrajectory::Kind::tap;
    tr.p0_mm = field_value(fields, 1, text);
    tr.rate = field_value(fields, 2, text);
    tr.p1_mm = field_value(fields, 3, text);
    if (!(tr.rate > 0.0)) throw ParameterError("tap speed must be > 0");
    return tr;
  }
  if (head == "sine") {
    if (fields.size() != 4)
      throw ParseError("intent 'sine' needs sine:CENTER:AMP:FREQ, got '" +
                       text + "'");
    tr.kind = IntentTrajectory::Kind::sine;
    tr.p0_mm = field_value(fields, 1, text);
    tr.p1_mm = field_value(fields, 2, text);
    tr.rate = field_value(fields, 3, text);
    if (!(tr.rate > 0.0)) throw ParameterError("sine frequency must be > 0");
    if (tr.p1_mm < 0.0) throw ParameterError("sine amplitude must be >= 0");
    return tr;
  }
  throw ParseError("unknown intent '" + head +
                   "' (expected none|hold|tap|sine)");
}

std::string intent_to_string(const IntentTrajectory& tr) {
  switch (tr.kind) {
    case IntentTrajectory::Kind::none:
      return "none";
    case IntentTrajectory::Kind::hold:
      return "hold:" + format_sig6(tr.p0_mm);
    case IntentTrajectory::Kind::tap:
      return "tap:" + format_sig6(tr.p0_mm) + ":" + format_sig6(tr.rate) +
             ":" + format_sig6(tr.p1_mm);
    case IntentTrajectory::Kind::sine:
      return "sine:" + format_sig6(tr.p0_mm) + ":" + format_sig6(tr.p1_mm) +
             ":" + format_sig6(tr.rate);
  }
  return "none";
}

}  // namespace emtact
