#include "emtact/scenario.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <vector>

#include "emtact/errors.hpp"
#include "emtact/numeric.hpp"

namespace emtact {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Parser {
  Scenario sc;
  std::vector<std::string> problems;
  bool saw_run = false;
  bool saw_duration = false;

  void fail(long line, const std::string& msg) {
    problems.push_back("line " + std::to_string(line) + ": " + msg);
  }

  double num(long line, const std::string& key, const std::string& value) {
    double v = 0.0;
    if (!parse_double(value, v))
      fail(line, key + ": bad number '" + value + "'");
    return v;
  }

  std::uint64_t u64(long line, const std::string& key,
                    const std::string& value) {
    std::uint64_t v = 0;
    if (!parse_u64(value, v))
      fail(line, key + ": bad unsigned integer '" + value + "'");
    return v;
  }

  bool boolean(long line, const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail(line, key + ": bad boolean '" + value + "' (true|false|1|0)");
    return false;
  }

  void landscape_key(long line, const std::string& k, const std::string& v) {
    auto& p = sc.synth;
    if (k == "file") sc.landscape_file = v;
    else if (k == "a") p.a = num(line, k, v);
    else if (k == "b") p.b = num(line, k, v);
    else if (k == "d0_mm") p.d0_mm = num(line, k, v);
    else if (k == "d_min_mm") p.d_min_mm = num(line, k, v);
    else if (k == "d_max_mm") p.d_max_mm = num(line, k, v);
    else if (k == "d_step_mm") p.d_step_mm = num(line, k, v);
    else if (k == "i_min_a") p.i_min_a = num(line, k, v);
    else if (k == "i_max_a") p.i_max_a = num(line, k, v);
    else if (k == "i_step_a") p.i_step_a = num(line, k, v);
    else if (k == "noise_sigma_n") p.noise_sigma_n = num(line, k, v);
    else if (k == "seed") p.seed = u64(line, k, v);
    else fail(line, "unknown key '" + k + "' in [landscape]");
  }

  void sensor_key(long line, const std::string& k, const std::string& v) {
    auto& m = sc.sensor;
    if (k == "s_max") m.s_max = num(line, k, v);
    else if (k == "falloff_mm") m.falloff_mm = num(line, k, v);
    else if (k == "range_max_mm") m.range_max_mm = num(line, k, v);
    else if (k == "resolution_mm") m.resolution_mm = num(line, k, v);
    else if (k == "rate_hz") m.rate_hz = num(line, k, v);
    else if (k == "latency_ms") m.latency_s = num(line, k, v) / 1000.0;
    else if (k == "noise_sigma") m.noise_sigma = num(line, k, v);
    else fail(line, "unknown key '" + k + "' in [sensor]");
  }

  void actuator_key(long line, const std::string& k, const std::string& v) {
    auto& m = sc.actuator;
    if (k == "tau_ms") m.tau_s = num(line, k, v) / 1000.0;
    else if (k == "i_min_a") m.i_min_a = num(line, k, v);
    else if (k == "i_max_a") m.i_max_a = num(line, k, v);
    else if (k == "extra_latency_ms") m.extra_latency_s = num(line, k, v) / 1000.0;
    else if (k == "initial_current_a") sc.actuator_initial_a = num(line, k, v);
    else fail(line, "unknown key '" + k + "' in [actuator]");
  }

  void finger_key(long line, const std::string& k, const std::string& v) {
    auto& m = sc.finger;
    if (k == "mass_kg") m.mass_kg = num(line, k, v);
    else if (k == "k_f") m.k_f_n_mm = num(line, k, v);
    else if (k == "c_f") m.c_f_n_s_mm = num(line, k, v);
    else if (k == "gravity") m.gravity_m_s2 = num(line, k, v);
    else if (k == "k_c") sc.contact.k_c_n_mm = num(line, k, v);
    else if (k == "c_c") sc.contact.c_c_n_s_mm = num(line, k, v);
    else if (k == "start_distance_mm") sc.start_distance_mm = num(line, k, v);
    else if (k == "start_velocity_mm_s") sc.start_velocity_mm_s = num(line, k, v);
    else if (k == "intent") {
      try {
        sc.intent = parse_intent(v);
      } catch (const std::exception& e) {
        fail(line, e.what());
      }
    } else {
      fail(line, "unknown key '" + k + "' in [finger]");
    }
  }

  void controller_key(long line, const std::string& k, const std::string& v) {
    auto& c = sc.controller;
    try {
      if (k == "mode") c.mode = parse_controller_mode(v);
      else if (k == "profile") c.profile = parse_profile(v);
      else if (k == "vibro_dc_n") c.vibro_dc_n = num(line, k, v);
      else if (k == "vibro_amp_n") c.vibro_amp_n = num(line, k, v);
      else if (k == "vibro_freq_hz") c.vibro_freq_hz = num(line, k, v);
      else fail(line, "unknown key '" + k + "' in [controller]");
    } catch (const std::exception& e) {
      fail(line, e.what());
    }
  }

  void predictor_key(long line, const std::string& k, const std::string& v) {
    auto& p = sc.predictor;
    auto& t = sc.trigger;
    if (k == "enabled") sc.predictor_enabled = boolean(line, k, v);
    else if (k == "d_threshold_mm") p.d_threshold_mm = num(line, k, v);
    else if (k == "l_out_audio_ms") p.l_out_audio_s = num(line, k, v) / 1000.0;
    else if (k == "v_min_mm_s") p.v_min_mm_s = num(line, k, v);
    else if (k == "ema_alpha") p.ema_alpha = num(line, k, v);
    else if (k == "pos_alpha") p.pos_alpha = num(line, k, v);
    else if (k == "rearm_mm") p.rearm_distance_mm = num(line, k, v);
    else if (k == "compensate_input_latency")
      p.compensate_input_latency = boolean(line, k, v);
    else if (k == "trigger_v_min") t.v_min_mm_s = num(line, k, v);
    else if (k == "trigger_v_ref") t.v_ref_mm_s = num(line, k, v);
    else if (k == "trigger_a_min") t.a_min = num(line, k, v);
    else if (k == "trigger_a_max") t.a_max = num(line, k, v);
    else if (k == "trigger_gamma") t.gamma = num(line, k, v);
    else fail(line, "unknown key '" + k + "' in [predictor]");
  }

  void run_key(long line, const std::string& k, const std::string& v) {
    if (k == "duration_s") {
      sc.duration_s = num(line, k, v);
      saw_duration = true;
    } else if (k == "seed") {
      sc.seed = u64(line, k, v);
    } else if (k == "trace_decimation") {
      double d = num(line, k, v);
      sc.trace_decimation = static_cast<long>(d);
      if (d != static_cast<double>(sc.trace_decimation))
        fail(line, "trace_decimation must be an integer");
    } else if (k == "out") {
      sc.out_path = v;
    } else {
      fail(line, "unknown key '" + k + "' in [run]");
    }
  }
};

}  // namespace

Scenario parse_scenario(std::istream& in) {
  Parser p;
  std::string raw;
  std::string section;
  long line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        p.fail(line_no, "unterminated section header '" + line + "'");
        continue;
      }
      section = line.substr(1, line.size() - 2);
      if (section == "run") p.saw_run = true;
      else if (section != "landscape" && section != "sensor" &&
               section != "actuator" && section != "finger" &&
               section != "controller" && section != "predictor") {
        p.fail(line_no, "unknown section [" + section + "]");
        section.clear();
      }
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      p.fail(line_no, "expected key = value, got '" + line + "'");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      p.fail(line_no, "empty key");
      continue;
    }
    if (section.empty()) {
      p.fail(line_no, "key '" + key + "' before any [section]");
      continue;
    }

    if (section == "landscape") p.landscape_key(line_no, key, value);
    else if (section == "sensor") p.sensor_key(line_no, key, value);
    else if (section == "actuator") p.actuator_key(line_no, key, value);
    else if (section == "finger") p.finger_key(line_no, key, value);
    else if (section == "controller") p.controller_key(line_no, key, value);
    else if (section == "predictor") p.predictor_key(line_no, key, value);
    else if (section == "run") p.run_key(line_no, key, value);
  }

  if (!p.saw_run)
    p.problems.push_back("missing required [run] section");
  else if (!p.saw_duration)
    p.problems.push_back("missing duration_s in [run]");

  if (!p.problems.empty()) throw ValidationError(p.problems);

  validate_scenario(p.sc);
  return p.sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file '" + path + "'");
  return parse_scenario(in);
}

void validate_scenario(const Scenario& s) {
  std::vector<std::string> problems;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) problems.push_back(msg);
  };

  require(s.duration_s > 0.0, "[run] duration_s must be > 0");
  require(s.trace_decimation >= 1, "[run] trace_decimation must be >= 1");

  require(s.sensor.rate_hz > 0.0, "[sensor] rate_hz must be > 0");
  require(s.sensor.resolution_mm > 0.0, "[sensor] resolution_mm must be > 0");
  require(s.sensor.range_max_mm > 0.0, "[sensor] range_max_mm must be > 0");
  require(s.sensor.falloff_mm > 0.0, "[sensor] falloff_mm must be > 0");
  require(s.sensor.s_max > 0.0, "[sensor] s_max must be > 0");
  require(s.sensor.latency_s >= 0.0, "[sensor] latency_ms must be >= 0");
  require(s.sensor.noise_sigma >= 0.0, "[sensor] noise_sigma must be >= 0");

  if (s.sensor.rate_hz > 0.0) {
    double ratio = s.actuator.rate_hz / s.sensor.rate_hz;
    require(std::abs(ratio - std::round(ratio)) < 1e-9 && ratio >= 1.0,
            "[sensor] rate_hz must divide the 96000 Hz tick evenly");
  }

  require(s.actuator.rate_hz == 96000.0,
          "[actuator] tick rate is fixed at 96000 Hz");
  require(s.actuator.tau_s > 0.0, "[actuator] tau_ms must be > 0");
  require(s.actuator.i_min_a < s.actuator.i_max_a,
          "[actuator] current clamp range is empty");
  require(s.actuator.extra_latency_s >= 0.0,
          "[actuator] extra_latency_ms must be >= 0");
  require(s.actuator_initial_a >= s.actuator.i_min_a &&
              s.actuator_initial_a <= s.actuator.i_max_a,
          "[actuator] initial_current_a outside the clamp range");

  require(s.finger.mass_kg > 0.0, "[finger] mass_kg must be > 0");
  require(s.finger.k_f_n_mm >= 0.0, "[finger] k_f must be >= 0");
  require(s.finger.c_f_n_s_mm >= 0.0, "[finger] c_f must be >= 0");
  require(s.finger.gravity_m_s2 >= 0.0, "[finger] gravity must be >= 0");
  require(s.contact.k_c_n_mm >= 0.0, "[finger] k_c must be >= 0");
  require(s.contact.c_c_n_s_mm >= 0.0, "[finger] c_c must be >= 0");
  require(s.start_distance_mm >= 0.0 &&
              s.start_distance_mm <= s.sensor.range_max_mm,
          "[finger] start_distance_mm outside the sensor range");

  if (s.controller.mode == ControllerConfig::Mode::vibro) {
    require(s.controller.vibro_freq_hz > 0.0 &&
                s.controller.vibro_freq_hz <= 1000.0,
            "[controller] vibro_freq_hz must be in (0, 1000]");
    require(s.controller.vibro_amp_n >= 0.0,
            "[controller] vibro_amp_n must be >= 0");
  }

  require(s.predictor.ema_alpha > 0.0 && s.predictor.ema_alpha <= 1.0,
          "[predictor] ema_alpha must be in (0, 1]");
  require(s.predictor.pos_alpha > 0.0 && s.predictor.pos_alpha <= 1.0,
          "[predictor] pos_alpha must be in (0, 1]");
  require(s.predictor.v_min_mm_s > 0.0, "[predictor] v_min_mm_s must be > 0");
  require(s.predictor.rearm_distance_mm >= 0.0,
          "[predictor] rearm_mm must be >= 0");
  require(s.predictor.l_out_audio_s >= 0.0,
          "[predictor] l_out_audio_ms must be >= 0");
  require(s.predictor.d_threshold_mm >= 0.0,
          "[predictor] d_threshold_mm must be >= 0");

  require(s.trigger.v_min_mm_s > 0.0, "[predictor] trigger_v_min must be > 0");
  require(s.trigger.v_ref_mm_s > s.trigger.v_min_mm_s,
          "[predictor] trigger_v_ref must exceed trigger_v_min");
  require(s.trigger.a_min >= 0.0 && s.trigger.a_max >= s.trigger.a_min,
          "[predictor] trigger amplitudes need 0 <= a_min <= a_max");
  require(s.trigger.gamma > 0.0, "[predictor] trigger_gamma must be > 0");

  if (!problems.empty()) throw ValidationError(problems);
}

}  // namespace emtact
