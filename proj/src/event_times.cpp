#include "ppgrow/event_times.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ppgrow/errors.hpp"

namespace ppgrow {

EventTimes::EventTimes(std::vector<double> times) : times_(std::move(times)) {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || times_[i] < 0.0) {
      throw domain_error("event time at index " + std::to_string(i) +
                         " is not a finite nonnegative value");
    }
    if (i > 0 && times_[i] < times_[i - 1]) {
      throw domain_error("event times must be nondecreasing (violation at index " +
                         std::to_string(i) + ")");
    }
  }
}

Iets inter_event_times(const EventTimes& times) {
  if (times.size() < 2) {
    throw insufficient_data_error("inter-event times require at least two events");
  }
  Iets out;
  out.values.reserve(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) {
    out.values.push_back(times[i] - times[i - 1]);
  }
  return out;
}

}  // namespace ppgrow
