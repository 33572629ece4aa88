#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace emtact {

enum class Channel { audio, tactile };

const char* channel_name(Channel c);

struct ScheduledEvent {
  std::uint64_t id = 0;
  Channel channel = Channel::audio;
  double issue_time_s = 0.0;      // when the command must leave the engine
  double intended_onset_s = 0.0;  // when the user should perceive it
  double amplitude = 0.0;
  bool late = false;  // issue_time was already past at scheduling time
};

// Pending-event store for the prescheduler. Deterministic: ids increase
// monotonically and same-tick events come out in schedule order.
class EventQueue {
 public:
  // Stamps id and the late flag (issue_time < now at scheduling).
  // issue_time may not exceed intended_onset.
  std::uint64_t schedule(Channel channel, double issue_time_s,
                         double intended_onset_s, double amplitude,
                         double now_s);

  // Remove a pending event. True if it was still pending.
  bool cancel(std::uint64_t id);

  // Pop every event with issue_time <= now (a hair of tolerance covers
  // issue times computed to land exactly on a tick), ordered by issue
  // time then id.
  std::vector<ScheduledEvent> pop_due(double now_s);

  std::size_t pending_count() const { return pending_.size(); }

 private:
  std::vector<ScheduledEvent> pending_;
  std::uint64_t next_id_ = 1;
};

}  // namespace emtact
