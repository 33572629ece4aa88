#include "emtact/control.hpp"

#include <cmath>
#include <vector>

#include "emtact/errors.hpp"
#include "emtact/numeric.hpp"

namespace emtact {

double profile_value(const SignalProfile& p, double t_s) {
  if (p.kind == SignalProfile::Kind::constant) return p.v0;
  return t_s < p.t_step_s ? p.v0 : p.v1;
}

SignalProfile parse_profile(const std::string& text) {
  SignalProfile p;
  if (text.rfind("const:", 0) == 0) {
    if (!parse_double(text.substr(6), p.v0))
      throw ParseError("bad profile '" + text + "'");
    return p;
  }
  if (text.rfind("step:", 0) == 0) {
    std::string rest = text.substr(5);
    std::size_t c1 = rest.find(':');
    std::size_t c2 = c1 == std::string::npos ? std::string::npos
                                             : rest.find(':', c1 + 1);
    double t_ms = 0.0;
    if (c2 == std::string::npos ||
        !parse_double(rest.substr(0, c1), t_ms) ||
        !parse_double(rest.substr(c1 + 1, c2 - c1 - 1), p.v0) ||
        !parse_double(rest.substr(c2 + 1), p.v1))
      throw ParseError("profile 'step' needs step:T_MS:V0:V1, got '" + text +
                       "'");
    p.kind = SignalProfile::Kind::step;
    p.t_step_s = t_ms / 1000.0;
    return p;
  }
  throw ParseError("unknown profile '" + text + "' (expected const:|step:)");
}

ControllerConfig::Mode parse_controller_mode(const std::string& text) {
  if (text == "passive_surface") return ControllerConfig::Mode::passive_surface;
  if (text == "force_track") return ControllerConfig::Mode::force_track;
  if (text == "vibro") return ControllerConfig::Mode::vibro;
  if (text == "open_loop") return ControllerConfig::Mode::open_loop;
  throw ParseError("unknown controller mode '" + text + "'");
}

ControlResult control_update(const ControllerConfig& cfg, ControlState& st,
                             const ForceLandscape& g, double d_est_mm,
                             double t_s, double dt_s) {
  switch (cfg.mode) {
    case ControllerConfig::Mode::open_loop:
      return {profile_value(cfg.profile, t_s), false};

    case ControllerConfig::Mode::passive_surface: {
      CurrentSolution s = solve_current(g, d_est_mm, 0.0);
      return {s.current_a, s.saturated};
    }

    case ControllerConfig::Mode::force_track: {
      CurrentSolution s =
          solve_current(g, d_est_mm, profile_value(cfg.profile, t_s));
      return {s.current_a, s.saturated};
    }

    case ControllerConfig::Mode::vibro: {
      constexpr double two_pi = 2.0 * 3.14159265358979323846;
      double target = cfg.vibro_dc_n + cfg.vibro_amp_n * std::sin(st.phase_rad);
      st.phase_rad = std::fmod(st.phase_rad + two_pi * cfg.vibro_freq_hz * dt_s,
                               two_pi);
      CurrentSolution s = solve_current(g, d_est_mm, target);
      return {s.current_a, s.saturated};
    }
  }
  return {0.0, false};
}

double trigger_amplitude(const TriggerMap& m, double v_mm_s) {
  if (v_mm_s < m.v_min_mm_s) return 0.0;
  double x = (v_mm_s - m.v_min_mm_s) / (m.v_ref_mm_s - m.v_min_mm_s);
  if (x > 1.0) x = 1.0;
  return m.a_min + (m.a_max - m.a_min) * std::pow(x, m.gamma);
}

}  // namespace emtact
