#pragma once

// Peak detection, inter-pulse intervals, heart rate and cycle segmentation.

#include <cstddef>
#include <vector>

#include "rppg/signal.hpp"

namespace rppg {

inline constexpr double kMinIpiSeconds = 0.5;
inline constexpr std::size_t kCycleLength = 60;

struct PeakList {
  std::vector<std::size_t> indices;  // strictly increasing
  double sample_rate = 0.0;

  std::size_t size() const { return indices.size(); }
  // ceil(rate/2) samples, the closest two peaks may sit.
  std::size_t min_gap() const;
};

struct IpiSequence {
  std::vector<double> intervals;  // seconds

  std::size_t size() const { return intervals.size(); }
  bool empty() const { return intervals.empty(); }
  double min() const;
  double max() const;
};

struct CycleSet {
  std::vector<std::vector<double>> cycles;  // each of equal length, values in [0,1]

  std::size_t size() const { return cycles.size(); }
  bool empty() const { return cycles.empty(); }
  std::size_t cycle_len() const { return cycles.empty() ? 0 : cycles.front().size(); }
};

struct PeakConfig {
  double prominence_factor = 0.3;  // times the population sigma of the pulse
};

// Topographic prominence of the local maximum at `index`.
double peak_prominence(const std::vector<double>& values, std::size_t index);

PeakList detect_peaks(const PulseSignal& pulse, const PeakConfig& config = {});

// Intervals shorter than half a second are dropped.
IpiSequence ipi_from_peaks(const PeakList& peaks);

double heart_rate(const IpiSequence& ipi);

CycleSet segment_cycles(const PulseSignal& pulse, const PeakList& peaks,
                        std::size_t cycle_len = kCycleLength);

double skewness(const std::vector<double>& values);

// Flips the pulse if needed so that it has non-negative skewness; PPG beats
// are sharp upward systolic peaks over a broad baseline.
PulseSignal orient_upward(PulseSignal pulse);

}  // namespace rppg
