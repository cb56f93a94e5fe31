#include "rppg/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rppg/error.hpp"

namespace rppg {

namespace {

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
}

// Local maxima; a flat top yields its (floored) midpoint.
std::vector<std::size_t> local_maxima(const std::vector<double>& x) {
  std::vector<std::size_t> out;
  const std::size_t n = x.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (x[i] > x[i - 1] && !nearly_equal(x[i], x[i - 1])) {
      std::size_t ahead = i + 1;
      while (ahead + 1 < n && nearly_equal(x[ahead], x[i])) ++ahead;
      if (x[ahead] < x[i] && !nearly_equal(x[ahead], x[i])) {
        out.push_back((i + ahead - 1) / 2);
        i = ahead;
        continue;
      }
    }
    ++i;
  }
  return out;
}

}  // namespace

std::size_t PeakList::min_gap() const {
  return static_cast<std::size_t>(std::ceil(sample_rate / 2.0));
}

double IpiSequence::min() const {
  if (intervals.empty()) throw Error(ErrorCode::EmptySequence, "empty IPI sequence");
  return *std::min_element(intervals.begin(), intervals.end());
}

double IpiSequence::max() const {
  if (intervals.empty()) throw Error(ErrorCode::EmptySequence, "empty IPI sequence");
  return *std::max_element(intervals.begin(), intervals.end());
}

double peak_prominence(const std::vector<double>& x, std::size_t index) {
  const double h = x.at(index);
  double left_min = h;
  for (std::size_t j = index; j-- > 0;) {
    if (x[j] > h && !nearly_equal(x[j], h)) break;
    left_min = std::min(left_min, x[j]);
  }
  double right_min = h;
  for (std::size_t j = index + 1; j < x.size(); ++j) {
    if (x[j] > h && !nearly_equal(x[j], h)) break;
    right_min = std::min(right_min, x[j]);
  }
  return h - std::max(left_min, right_min);
}

PeakList detect_peaks(const PulseSignal& pulse, const PeakConfig& config) {
  validate(pulse);
  if (static_cast<double>(pulse.size()) < pulse.sample_rate)
    throw Error(ErrorCode::SignalTooShort, "peak detection needs at least one second of signal");

  PeakList result{{}, pulse.sample_rate};
  const double threshold = config.prominence_factor * pstdev(pulse.values);

  std::vector<std::size_t> candidates;
  for (auto i : local_maxima(pulse.values)) {
    if (peak_prominence(pulse.values, i) >= threshold && threshold > 0.0) candidates.push_back(i);
  }

  // Highest first; a kept peak suppresses every candidate closer than min_gap.
  const std::size_t gap = result.min_gap();
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pulse.values[candidates[a]] > pulse.values[candidates[b]];
  });
  std::vector<bool> removed(candidates.size(), false);
  for (auto k : order) {
    if (removed[k]) continue;
    const auto idx = candidates[k];
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (j == k || removed[j]) continue;
      const auto other = candidates[j];
      const auto dist = other > idx ? other - idx : idx - other;
      if (dist < gap) removed[j] = true;
    }
  }
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (!removed[k]) result.indices.push_back(candidates[k]);
  }
  if (result.indices.size() < 2) throw Error(ErrorCode::NoPeaks, "fewer than 2 peaks found");
  return result;
}

IpiSequence ipi_from_peaks(const PeakList& peaks) {
  if (peaks.size() < 2) throw Error(ErrorCode::NoPeaks, "need at least 2 peaks for an interval");
  if (!(peaks.sample_rate > 0.0)) throw Error(ErrorCode::InvalidArgument, "sample rate must be > 0");
  IpiSequence ipi;
  for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
    if (peaks.indices[i + 1] <= peaks.indices[i])
      throw Error(ErrorCode::InvalidArgument, "peak indices must be strictly increasing");
    const double seconds = static_cast<double>(peaks.indices[i + 1] - peaks.indices[i]) / peaks.sample_rate;
    if (seconds >= kMinIpiSeconds) ipi.intervals.push_back(seconds);
  }
  if (ipi.empty()) throw Error(ErrorCode::NoPeaks, "no interval survives the half-second rule");
  return ipi;
}

double heart_rate(const IpiSequence& ipi) {
  if (ipi.empty()) throw Error(ErrorCode::EmptySequence, "heart rate of an empty IPI sequence");
  return 60.0 / mean(ipi.intervals);
}

CycleSet segment_cycles(const PulseSignal& pulse, const PeakList& peaks, std::size_t cycle_len) {
  if (peaks.size() < 2) throw Error(ErrorCode::NoPeaks, "need at least 2 peaks to segment cycles");
  if (cycle_len < 2) throw Error(ErrorCode::InvalidArgument, "cycle length must be at least 2");
  CycleSet set;
  set.cycles.reserve(peaks.size() - 1);
  for (std::size_t i = 0; i + 1 < peaks.size(); ++i) {
    const auto a = peaks.indices[i];
    const auto b = peaks.indices[i + 1];
    if (b <= a || b > pulse.size()) throw Error(ErrorCode::InvalidArgument, "peak index outside the pulse");
    const std::span<const double> seg(pulse.values.data() + a, b - a);
    set.cycles.push_back(normalize01(resample(seg, cycle_len)));
  }
  return set;
}

double skewness(const std::vector<double>& values) {
  const double m = mean(values);
  double m2 = 0.0;
  double m3 = 0.0;
  for (double v : values) {
    const double d = v - m;
    m2 += d * d;
    m3 += d * d * d;
  }
  const double n = static_cast<double>(values.size());
  m2 /= n;
  m3 /= n;
  if (m2 <= 0.0) return 0.0;
  return m3 / std::pow(m2, 1.5);
}

PulseSignal orient_upward(PulseSignal pulse) {
  if (!pulse.values.empty() && skewness(pulse.values) < 0.0) {
    for (double& v : pulse.values) v = -v;
  }
  return pulse;
}

}  // namespace rppg
