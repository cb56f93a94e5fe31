#pragma once

// End-to-end compositions: video -> pulse -> peaks -> IPI -> bits.

#include <string>

#include "rppg/extract.hpp"
#include "rppg/metrics.hpp"
#include "rppg/pulse.hpp"
#include "rppg/quantize.hpp"
#include "rppg/signal.hpp"

namespace rppg {

struct ExtractConfig {
  PreprocessConfig preprocess{};
  double pos_window_s = kPosWindowSeconds;
  // Flip the output so systolic peaks point up.
  bool orient = true;
};

// CHROM and PCA run on the preprocessed trace. POS and LGI normalize by the
// channel means, so they run on the raw trace and their output is
// preprocessed instead.
PulseSignal extract_pulse(const RgbTrace& raw_trace, Method method, const ExtractConfig& config = {});
PulseSignal extract_pulse(const FrameSequence& frames, const RoiMask& mask, Method method,
                          const ExtractConfig& config = {});

// A contact PPG (or synthetic truth) passed through the same preprocessing
// and orientation as an extracted pulse.
PulseSignal reference_pulse(const PulseSignal& ppg, const ExtractConfig& config = {});

struct IpiAnalysis {
  PeakList peaks;
  IpiSequence ipi;
  double heart_rate_bpm = 0.0;
};

IpiAnalysis analyze_ipi(const PulseSignal& pulse, const PeakConfig& config = {});

std::vector<GrayCodeWord> gray_words(const IpiSequence& ipi);
std::string gray_bits(const IpiSequence& ipi);

// Gray-code bit hit rate of the IPIs of `candidate` against `reference`
// after first-peak alignment. Falls back to aligning the starts when no
// pair of first peaks is within tolerance.
double gray_bhr(const PeakList& reference, const PeakList& candidate);

// Trend code over bins fitted to `ipi` itself. A constant sequence has no
// rises and encodes as all zeros.
TrendCode trend_code(const IpiSequence& ipi);

}  // namespace rppg
