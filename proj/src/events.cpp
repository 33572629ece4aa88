#include "emtact/events.hpp"

#include <algorithm>

#include "emtact/errors.hpp"

namespace emtact {

// Covers issue times that were computed to land exactly on a tick but
// differ in the last ulp from the tick clock's own arithmetic.
static constexpr double kTickSlop_s = 1e-12;

const char* channel_name(Channel c) {
  return c == Channel::audio ? "audio" : "tactile";
}

std::uint64_t EventQueue::schedule(Channel channel, double issue_time_s,
                                   double intended_onset_s, double amplitude,
                                   double now_s) {
  if (issue_time_s > intended_onset_s + kTickSlop_s)
    throw ParameterError("event issue time is after its intended onset");
  ScheduledEvent ev;
  ev.id = next_id_++;
  ev.channel = channel;
  ev.issue_time_s = issue_time_s;
  ev.intended_onset_s = intended_onset_s;
  ev.amplitude = amplitude;
  ev.late = issue_time_s < now_s - kTickSlop_s;
  pending_.push_back(ev);
  return ev.id;
}

bool EventQueue::cancel(std::uint64_t id) {
  auto it = std::find_if(pending_.begin(), pending_.end(),
                         [id](const ScheduledEvent& e) { return e.id == id; });
  if (it == pending_.end()) return false;
  pending_.erase(it);
  return true;
}

std::vector<ScheduledEvent> EventQueue::pop_due(double now_s) {
  std::vector<ScheduledEvent> due;
  auto split =
      std::stable_partition(pending_.begin(), pending_.end(),
                            [now_s](const ScheduledEvent& e) {
                              return e.issue_time_s > now_s + kTickSlop_s;
                            });
  due.assign(split, pending_.end());
  pending_.erase(split, pending_.end());
  std::stable_sort(due.begin(), due.end(),
                   [](const ScheduledEvent& a, const ScheduledEvent& b) {
                     if (a.issue_time_s != b.issue_time_s)
                       return a.issue_time_s < b.issue_time_s;
                     return a.id < b.id;
                   });
  return due;
}

}  // namespace emtact
