#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "emtact/engine.hpp"
#include "emtact/errors.hpp"
#include "emtact/scenario.hpp"

using namespace emtact;

namespace {

Trace run(const std::string& config) {
  std::istringstream in(config);
  Scenario sc = parse_scenario(in);
  return simulate(sc);
}

std::string render(const Trace& tr) {
  std::ostringstream out;
  write_trace(tr, out);
  return out.str();
}

// Field off (b = 0, zero commanded current), no intent coupling: the body
// is ballistic and every number is hand-checkable.
const char* kBallistic =
    "[landscape]\nb = 0\n"
    "[finger]\nintent = none\nstart_distance_mm = 10\n"
    "[controller]\nmode = open_loop\nprofile = const:0\n"
    "[run]\nduration_s = 0.01\n";

}  // namespace

TEST_CASE("free fall reproduces the hand-summed drop") {
  Trace tr = run(kBallistic);
  CHECK(tr.summary.ticks == 960);
  CHECK(tr.summary.sensor_samples == 48);
  // x_n = x0 - g dt^2 n(n+1)/2 after 960 ticks of semi-implicit Euler
  double dt = 1.0 / 96000.0;
  double expect = 10.0 - 9810.0 * dt * dt * (960.0 * 961.0 / 2.0);
  CHECK(tr.summary.min_d_true_mm == doctest::Approx(expect).epsilon(1e-9));
  CHECK(tr.summary.contact_count == 0);
  CHECK(tr.summary.max_penetration_mm == 0.0);
  CHECK(tr.summary.max_abs_f_mag_n == 0.0);
  CHECK(!tr.summary.predictor_fired);
}

TEST_CASE("trace rows sample the tick grid") {
  Trace tr = run(kBallistic);
  REQUIRE(tr.rows.size() == 48);  // 960 ticks / decimation 20
  CHECK(tr.rows[0].t_ms == 0.0);
  CHECK(tr.rows[0].d_true_mm == 10.0);  // state at the tick, pre-integration
  CHECK(tr.rows[1].t_ms == doctest::Approx(20.0 / 96.0).epsilon(1e-9));
  // d_true decreases monotonically during the fall
  for (std::size_t i = 1; i < tr.rows.size(); ++i)
    CHECK(tr.rows[i].d_true_mm < tr.rows[i - 1].d_true_mm);
}

TEST_CASE("dropping onto the surface makes one overdamped contact") {
  Trace tr = run(
      "[landscape]\nb = 0\n"
      "[finger]\nintent = none\nstart_distance_mm = 2\n"
      "[controller]\nmode = open_loop\nprofile = const:0\n"
      "[run]\nduration_s = 0.1\n");
  CHECK(tr.summary.contact_count == 1);
  // continuous fall time sqrt(2 * 2 mm / g) = 20.2 ms
  CHECK(tr.summary.first_contact_ms == doctest::Approx(20.19).epsilon(0.02));
  // overdamped entry: analytic overshoot peaks at 0.103 mm before the
  // finger creeps back out to the static m g / k_c = 0.0294 mm
  CHECK(tr.summary.max_penetration_mm > 0.08);
  CHECK(tr.summary.max_penetration_mm < 0.13);
  // entry damping spike: c_c * v = 0.05 * 198 = 9.9 N for one tick
  CHECK(tr.summary.max_abs_f_contact_n > 1.0);
  CHECK(tr.summary.max_abs_f_contact_n < 12.0);
}

TEST_CASE("measured distance is the delayed, quantized truth") {
  // Constant-velocity descent: d(t) = 20 - 300 t exactly (no forces).
  Trace tr = run(
      "[landscape]\nb = 0\n"
      "[finger]\nintent = none\nstart_distance_mm = 20\n"
      "start_velocity_mm_s = -300\ngravity = 0\n"
      "[controller]\nmode = open_loop\nprofile = const:0\n"
      "[run]\nduration_s = 0.02\n");
  // row 72 sits at t = 15 ms (every 20th tick of 96 kHz)
  const TraceRow& r = tr.rows.at(72);
  CHECK(r.t_ms == doctest::Approx(15.0).epsilon(1e-9));
  CHECK(r.d_true_mm == doctest::Approx(20.0 - 300.0 * 0.015).epsilon(1e-9));
  // sensor shows t - 1.8 ms: 20 - 300 * 0.0132 = 16.04 -> 16.0 on the grid
  CHECK(r.d_meas_mm == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("commands hold between sensor updates") {
  Trace tr = run(
      "[finger]\nintent = tap:35:100:20\n"
      "[controller]\nmode = passive_surface\n"
      "[run]\nduration_s = 0.05\ntrace_decimation = 1\n");
  REQUIRE(tr.rows.size() == 4800);
  for (std::size_t i = 0; i < 4800; ++i) {
    // within a 20-tick block the command must not move
    if (i % 20 != 0)
      CHECK(tr.rows[i].i_cmd_a == tr.rows[i - 1].i_cmd_a);
  }
  // but it does move across the run (the finger descends 1.5 mm)
  CHECK(tr.rows.front().i_cmd_a != tr.rows.back().i_cmd_a);
}

TEST_CASE("passive surface holds a resting finger at near-zero force") {
  Trace tr = run(
      "[actuator]\ninitial_current_a = 0.03125\n"
      "[finger]\nintent = hold:35\n"
      "[controller]\nmode = passive_surface\n"
      "[run]\nduration_s = 0.1\n");
  CHECK(tr.summary.contact_count == 0);
  CHECK(tr.summary.max_abs_f_mag_n <= 5e-4);
  CHECK(tr.summary.cmd_saturation_count == 0);
}

TEST_CASE("prescheduled pair lands on the physical contact") {
  // Pure constant-velocity approach from 20 mm at 500 mm/s; the pad and
  // gravity are off so true contact is exactly 40 ms in.
  Trace tr = run(
      "[landscape]\nb = 0\n"
      "[finger]\nintent = none\nstart_distance_mm = 20\n"
      "start_velocity_mm_s = -500\ngravity = 0\n"
      "[controller]\nmode = open_loop\nprofile = const:0\n"
      "[predictor]\nenabled = true\nema_alpha = 0.03\n"
      "[run]\nduration_s = 0.06\n");

  CHECK(tr.summary.predictor_fired);
  REQUIRE(tr.summary.events.size() == 2);
  const EventRecord& audio = tr.summary.events[0];
  const EventRecord& tactile = tr.summary.events[1];
  CHECK(audio.channel == Channel::audio);
  CHECK(tactile.channel == Channel::tactile);
  CHECK(!audio.late);
  CHECK(!tactile.late);
  // both channels carry the same onset and amplitude
  CHECK(audio.intended_onset_ms == tactile.intended_onset_ms);
  CHECK(audio.amplitude == tactile.amplitude);
  CHECK(audio.amplitude > 0.0);
  CHECK(audio.amplitude <= 1.0);
  // the two physical onsets coincide within one tick
  double tick_ms = 1000.0 / 96000.0;
  CHECK(std::abs(audio.perceived_onset_ms - tactile.perceived_onset_ms) <=
        tick_ms + 1e-9);
  // and the pair lands on the true contact within the acceptance budget
  CHECK(tr.summary.onset_error_valid);
  CHECK(std::abs(tr.summary.onset_error_ms) <= 0.5);
  CHECK(tr.summary.first_contact_ms == doctest::Approx(40.0).epsilon(0.01));
  CHECK(tr.summary.predicted_onset_ms ==
        doctest::Approx(audio.intended_onset_ms));

  // the issue moments are annotated in the row stream
  std::string annotations;
  for (const TraceRow& r : tr.rows) annotations += r.event + "|";
  CHECK(annotations.find("audio:") != std::string::npos);
  CHECK(annotations.find("tactile:") != std::string::npos);
  CHECK(annotations.find(":ontime") != std::string::npos);
}

TEST_CASE("the cycle rearms after the finger retreats") {
  // A 2 Hz bounce: two descents through the surface in one second, with a
  // 12 mm retreat between them, so the pair fires twice.
  Trace tr = run(
      "[landscape]\nb = 0\n"
      "[finger]\nintent = sine:4:8:2\ngravity = 0\n"
      "start_distance_mm = 4\n"
      "[controller]\nmode = open_loop\nprofile = const:0\n"
      "[predictor]\nenabled = true\n"
      "[run]\nduration_s = 1\n");
  CHECK(tr.summary.contact_count == 2);
  CHECK(tr.summary.events.size() == 4);
}

TEST_CASE("same seed, same bytes; different seed, different bytes") {
  const char* noisy =
      "[landscape]\nnoise_sigma_n = 0.0005\nseed = 11\n"
      "[sensor]\nnoise_sigma = 0.002\n"
      "[finger]\nintent = tap:35:400:3\n"
      "[controller]\nmode = passive_surface\n"
      "[predictor]\nenabled = true\n"
      "[run]\nduration_s = 0.12\nseed = 21\n";
  std::string a = render(run(noisy));
  std::string b = render(run(noisy));
  CHECK(a == b);

  std::string other(noisy);
  auto pos = other.rfind("seed = 21");
  other.replace(pos, 9, "seed = 22");
  std::string c = render(run(other));
  CHECK(a != c);
}

TEST_CASE("runaway states stop the run rather than emitting garbage") {
  CHECK_THROWS_AS(run("[landscape]\nb = 0\n"
                      "[finger]\nintent = none\nstart_distance_mm = 35\n"
                      "start_velocity_mm_s = 3000\ngravity = 0\n"
                      "[controller]\nmode = open_loop\nprofile = const:0\n"
                      "[run]\nduration_s = 0.5\n"),
                  DivergenceError);
}

TEST_CASE("actuator clamp wider than the calibrated span is refused") {
  CHECK_THROWS_AS(run("[landscape]\ni_min_a = -1\ni_max_a = 1\n"
                      "[run]\nduration_s = 0.01\n"),
                  ValidationError);
}

TEST_CASE("trace decimation controls row density, not physics") {
  Trace coarse = run(kBallistic);
  std::string fine_cfg(kBallistic);
  fine_cfg += "trace_decimation = 5\n";
  Trace fine = run(fine_cfg);
  CHECK(fine.rows.size() == 192);
  CHECK(fine.summary.min_d_true_mm == coarse.summary.min_d_true_mm);
  // every 4th fine row is a coarse row
  for (std::size_t i = 0; i < coarse.rows.size(); ++i)
    CHECK(fine.rows[i * 4].d_true_mm == coarse.rows[i].d_true_mm);
}
