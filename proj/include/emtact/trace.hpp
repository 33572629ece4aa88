#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "emtact/events.hpp"

namespace emtact {

// One decimated tick of the run. `event` is empty or a ';'-joined list of
// "channel:onset_ms:late|ontime" entries for events issued since the
// previous recorded row.
struct TraceRow {
  double t_ms = 0.0;
  double d_true_mm = 0.0;
  double d_meas_mm = 0.0;
  double v_est_mm_s = 0.0;
  double i_cmd_a = 0.0;
  double i_act_a = 0.0;
  double f_mag_n = 0.0;
  double f_contact_n = 0.0;
  std::string event;
};

inline constexpr const char* kTraceHeader =
    "t_ms,d_true_mm,d_meas_mm,v_est_mm_s,I_cmd_A,I_act_A,F_mag_N,"
    "F_contact_N,event";

// Full story of one issued event, kept at full precision in the summary.
struct EventRecord {
  Channel channel = Channel::audio;
  double intended_onset_ms = 0.0;
  double requested_issue_ms = 0.0;  // what the scheduler asked for
  double actual_issue_ms = 0.0;     // the tick it actually left on
  double perceived_onset_ms = 0.0;  // actual issue + channel latency
  double amplitude = 0.0;
  bool late = false;
};

struct TraceSummary {
  double duration_s = 0.0;
  long long ticks = 0;
  long long sensor_samples = 0;
  std::uint64_t seed = 0;

  double min_d_true_mm = 0.0;
  double max_penetration_mm = 0.0;
  long long contact_count = 0;
  double first_contact_ms = -1.0;  // -1 when no contact happened

  double max_abs_f_mag_n = 0.0;
  // Same ceiling but only up to first contact (whole run if none): the
  // window where a passive surface must stay quiet.
  double max_abs_f_mag_approach_n = 0.0;
  double max_abs_f_contact_n = 0.0;

  long long cmd_saturation_count = 0;
  long long meas_saturation_count = 0;

  bool predictor_fired = false;
  double predicted_onset_ms = -1.0;
  // perceived onset error = intended onset - first physical contact;
  // only meaningful when both happened.
  bool onset_error_valid = false;
  double onset_error_ms = 0.0;

  std::vector<EventRecord> events;
};

struct Trace {
  std::vector<TraceRow> rows;
  TraceSummary summary;
};

// CSV rows under kTraceHeader, then a "#summary" line, then key=value
// pairs (event_N=... for the event records). Deterministic byte-for-byte
// for a given trace.
void write_trace(const Trace& tr, std::ostream& out);
void write_trace(const Trace& tr, const std::string& path);

// Strict reader for the exact format write_trace emits. ParseError with a
// line number on anything unexpected.
Trace read_trace(std::istream& in);
Trace read_trace(const std::string& path);

}  // namespace emtact
