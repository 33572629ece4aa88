#include "emtact/trace.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "emtact/errors.hpp"
#include "emtact/numeric.hpp"

namespace emtact {
namespace {

const char* late_word(bool late) { return late ? "late" : "ontime"; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double need_double(const std::string& text, long line_no) {
  double v = 0.0;
  if (!parse_double(text, v))
    throw ParseError("bad number '" + text + "'", line_no);
  return v;
}

long long need_int(const std::string& text, long line_no) {
  double v = need_double(text, line_no);
  auto n = static_cast<long long>(v);
  if (static_cast<double>(n) != v)
    throw ParseError("expected integer, got '" + text + "'", line_no);
  return n;
}

bool need_bool(const std::string& text, long line_no) {
  if (text == "1") return true;
  if (text == "0") return false;
  throw ParseError("expected 0 or 1, got '" + text + "'", line_no);
}

Channel need_channel(const std::string& text, long line_no) {
  if (text == "audio") return Channel::audio;
  if (text == "tactile") return Channel::tactile;
  throw ParseError("unknown channel '" + text + "'", line_no);
}

EventRecord parse_event_record(const std::string& text, long line_no) {
  EventRecord ev;
  for (const std::string& field : split(text, ',')) {
    std::size_t eq = field.find('=');
    if (eq == std::string::npos)
      throw ParseError("bad event field '" + field + "'", line_no);
    std::string k = field.substr(0, eq);
    std::string v = field.substr(eq + 1);
    if (k == "channel") ev.channel = need_channel(v, line_no);
    else if (k == "intended_onset_ms") ev.intended_onset_ms = need_double(v, line_no);
    else if (k == "requested_issue_ms") ev.requested_issue_ms = need_double(v, line_no);
    else if (k == "actual_issue_ms") ev.actual_issue_ms = need_double(v, line_no);
    else if (k == "perceived_onset_ms") ev.perceived_onset_ms = need_double(v, line_no);
    else if (k == "amplitude") ev.amplitude = need_double(v, line_no);
    else if (k == "late") ev.late = need_bool(v, line_no);
    else throw ParseError("unknown event field '" + k + "'", line_no);
  }
  return ev;
}

std::string event_record_to_string(const EventRecord& ev) {
  return std::string("channel=") + channel_name(ev.channel) +
         ",intended_onset_ms=" + format_sig6(ev.intended_onset_ms) +
         ",requested_issue_ms=" + format_sig6(ev.requested_issue_ms) +
         ",actual_issue_ms=" + format_sig6(ev.actual_issue_ms) +
         ",perceived_onset_ms=" + format_sig6(ev.perceived_onset_ms) +
         ",amplitude=" + format_sig6(ev.amplitude) +
         ",late=" + (ev.late ? "1" : "0");
}

}  // namespace

void write_trace(const Trace& tr, std::ostream& out) {
  out << kTraceHeader << '\n';
  for (const TraceRow& r : tr.rows) {
    out << format_sig6(r.t_ms) << ',' << format_sig6(r.d_true_mm) << ','
        << format_sig6(r.d_meas_mm) << ',' << format_sig6(r.v_est_mm_s) << ','
        << format_sig6(r.i_cmd_a) << ',' << format_sig6(r.i_act_a) << ','
        << format_sig6(r.f_mag_n) << ',' << format_sig6(r.f_contact_n) << ','
        << r.event << '\n';
  }

  const TraceSummary& s = tr.summary;
  out << "#summary\n";
  out << "duration_s=" << format_sig6(s.duration_s) << '\n';
  out << "ticks=" << s.ticks << '\n';
  out << "sensor_samples=" << s.sensor_samples << '\n';
  out << "seed=" << s.seed << '\n';
  out << "min_d_true_mm=" << format_sig6(s.min_d_true_mm) << '\n';
  out << "max_penetration_mm=" << format_sig6(s.max_penetration_mm) << '\n';
  out << "contact_count=" << s.contact_count << '\n';
  if (s.contact_count > 0)
    out << "first_contact_ms=" << format_sig6(s.first_contact_ms) << '\n';
  out << "max_abs_F_mag_N=" << format_sig6(s.max_abs_f_mag_n) << '\n';
  out << "max_abs_F_mag_during_approach=" << format_sig6(s.max_abs_f_mag_approach_n) << '\n';
  out << "max_abs_F_contact_N=" << format_sig6(s.max_abs_f_contact_n) << '\n';
  out << "cmd_saturation_count=" << s.cmd_saturation_count << '\n';
  out << "meas_saturation_count=" << s.meas_saturation_count << '\n';
  out << "predictor_fired=" << (s.predictor_fired ? 1 : 0) << '\n';
  if (s.predictor_fired)
    out << "predicted_onset_ms=" << format_sig6(s.predicted_onset_ms) << '\n';
  if (s.onset_error_valid)
    out << "onset_error_ms=" << format_sig6(s.onset_error_ms) << '\n';
  for (const EventRecord& ev : s.events) {
    if (ev.channel == Channel::audio) {
      out << "audio_late=" << late_word(ev.late) << '\n';
      break;
    }
  }
  for (const EventRecord& ev : s.events) {
    if (ev.channel == Channel::tactile) {
      out << "tactile_late=" << late_word(ev.late) << '\n';
      break;
    }
  }
  out << "event_count=" << s.events.size() << '\n';
  for (std::size_t i = 0; i < s.events.size(); ++i)
    out << "event_" << i << '=' << event_record_to_string(s.events[i]) << '\n';
}

void write_trace(const Trace& tr, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  write_trace(tr, out);
  out.flush();
  if (!out) throw ParseError("write failed for '" + path + "'");
}

Trace read_trace(std::istream& in) {
  std::string line;
  long line_no = 0;

  if (!std::getline(in, line)) throw ParseError("empty trace");
  ++line_no;
  if (line != kTraceHeader)
    throw ParseError("trace header mismatch: got '" + line + "'", line_no);

  Trace tr;
  bool in_summary = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line == "#summary") {
      in_summary = true;
      continue;
    }

    if (!in_summary) {
      auto cells = split(line, ',');
      if (cells.size() != 9)
        throw ParseError("row has " + std::to_string(cells.size()) +
                             " cells, expected 9",
                         line_no);
      TraceRow r;
      r.t_ms = need_double(cells[0], line_no);
      r.d_true_mm = need_double(cells[1], line_no);
      r.d_meas_mm = need_double(cells[2], line_no);
      r.v_est_mm_s = need_double(cells[3], line_no);
      r.i_cmd_a = need_double(cells[4], line_no);
      r.i_act_a = need_double(cells[5], line_no);
      r.f_mag_n = need_double(cells[6], line_no);
      r.f_contact_n = need_double(cells[7], line_no);
      r.event = cells[8];
      tr.rows.push_back(std::move(r));
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key=value in summary, got '" + line + "'",
                       line_no);
    std::string k = line.substr(0, eq);
    std::string v = line.substr(eq + 1);
    TraceSummary& s = tr.summary;

    if (k == "duration_s") s.duration_s = need_double(v, line_no);
    else if (k == "ticks") s.ticks = need_int(v, line_no);
    else if (k == "sensor_samples") s.sensor_samples = need_int(v, line_no);
    else if (k == "seed") {
      std::uint64_t seed = 0;
      if (!parse_u64(v, seed)) throw ParseError("bad seed '" + v + "'", line_no);
      s.seed = seed;
    }
    else if (k == "min_d_true_mm") s.min_d_true_mm = need_double(v, line_no);
    else if (k == "max_penetration_mm") s.max_penetration_mm = need_double(v, line_no);
    else if (k == "contact_count") s.contact_count = need_int(v, line_no);
    else if (k == "first_contact_ms") s.first_contact_ms = need_double(v, line_no);
    else if (k == "max_abs_F_mag_N") s.max_abs_f_mag_n = need_double(v, line_no);
    else if (k == "max_abs_F_mag_during_approach") s.max_abs_f_mag_approach_n = need_double(v, line_no);
    else if (k == "max_abs_F_contact_N") s.max_abs_f_contact_n = need_double(v, line_no);
    else if (k == "cmd_saturation_count") s.cmd_saturation_count = need_int(v, line_no);
    else if (k == "meas_saturation_count") s.meas_saturation_count = need_int(v, line_no);
    else if (k == "predictor_fired") s.predictor_fired = need_bool(v, line_no);
    else if (k == "predicted_onset_ms") s.predicted_onset_ms = need_double(v, line_no);
    else if (k == "onset_error_ms") {
      s.onset_error_ms = need_double(v, line_no);
      s.onset_error_valid = true;
    }
    else if (k == "audio_late" || k == "tactile_late") {
      if (v != "late" && v != "ontime")
        throw ParseError("expected late|ontime, got '" + v + "'", line_no);
    }
    else if (k == "event_count") {
      // count cross-checked after the loop
      if (need_int(v, line_no) < 0)
        throw ParseError("negative event_count", line_no);
    }
    else if (k.rfind("event_", 0) == 0) {
      s.events.push_back(parse_event_record(v, line_no));
    }
    else throw ParseError("unknown summary key '" + k + "'", line_no);
  }

  if (!in_summary) throw ParseError("trace has no #summary block");
  return tr;
}

Trace read_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trace file '" + path + "'");
  return read_trace(in);
}

}  // namespace emtact
