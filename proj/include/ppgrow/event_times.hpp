#pragma once

#include <cstddef>
#include <vector>

namespace ppgrow {

// Ordered event timestamps in days, measured from a declared origin.
// Construction validates that the values are finite, nonnegative, and
// nondecreasing (ties are legal and preserved); an empty sequence is valid.
class EventTimes {
 public:
  EventTimes() = default;
  explicit EventTimes(std::vector<double> times);

  [[nodiscard]] const std::vector<double>& values() const { return times_; }
  [[nodiscard]] std::size_t size() const { return times_.size(); }
  [[nodiscard]] bool empty() const { return times_.empty(); }
  [[nodiscard]] double operator[](std::size_t i) const { return times_[i]; }
  [[nodiscard]] double front() const { return times_.front(); }
  [[nodiscard]] double back() const { return times_.back(); }

  [[nodiscard]] auto begin() const { return times_.begin(); }
  [[nodiscard]] auto end() const { return times_.end(); }

 private:
  std::vector<double> times_;
};

// Inter-event times. Values are nonnegative when derived from an EventTimes
// sequence; the type does not enforce this so that model-transformed
// residual sequences (which can go negative under invalid parameters) can be
// carried to the test stage, where the violation is diagnosed.
struct Iets {
  std::vector<double> values;

  [[nodiscard]] std::size_t size() const { return values.size(); }
  [[nodiscard]] bool empty() const { return values.empty(); }
};

// Consecutive differences of `times`; requires at least two events.
[[nodiscard]] Iets inter_event_times(const EventTimes& times);

}  // namespace ppgrow
