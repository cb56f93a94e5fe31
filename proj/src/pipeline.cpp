#include "rppg/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "rppg/error.hpp"

namespace rppg {

PulseSignal extract_pulse(const RgbTrace& raw_trace, Method method, const ExtractConfig& config) {
  PulseSignal pulse;
  switch (method) {
    case Method::Chrom:
      pulse = chrom(preprocess(raw_trace, config.preprocess));
      break;
    case Method::Pca:
      pulse = pca_extract(preprocess(raw_trace, config.preprocess));
      break;
    case Method::Pos: {
      const auto window = static_cast<std::size_t>(std::max(2.0, std::round(config.pos_window_s * raw_trace.fps)));
      pulse = preprocess(pos(raw_trace, window), config.preprocess);
      break;
    }
    case Method::Lgi:
      pulse = preprocess(lgi(raw_trace), config.preprocess);
      break;
  }
  return config.orient ? orient_upward(std::move(pulse)) : pulse;
}

PulseSignal extract_pulse(const FrameSequence& frames, const RoiMask& mask, Method method,
                          const ExtractConfig& config) {
  return extract_pulse(mean_rgb(frames, mask), method, config);
}

PulseSignal reference_pulse(const PulseSignal& ppg, const ExtractConfig& config) {
  auto pulse = preprocess(ppg, config.preprocess);
  return config.orient ? orient_upward(std::move(pulse)) : pulse;
}

IpiAnalysis analyze_ipi(const PulseSignal& pulse, const PeakConfig& config) {
  IpiAnalysis a;
  a.peaks = detect_peaks(pulse, config);
  a.ipi = ipi_from_peaks(a.peaks);
  a.heart_rate_bpm = heart_rate(a.ipi);
  return a;
}

std::vector<GrayCodeWord> gray_words(const IpiSequence& ipi) { return gray_encode(normalize_ipi(ipi)); }

std::string gray_bits(const IpiSequence& ipi) { return concat_bits(gray_words(ipi)); }

double gray_bhr(const PeakList& reference, const PeakList& candidate) {
  PairedSeries pair;
  try {
    pair = align_by_first_peak(reference, candidate);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoPeaks) throw;
    pair = PairedSeries::truncated(ipi_from_peaks(reference).intervals, ipi_from_peaks(candidate).intervals);
  }
  if (pair.size() == 0) throw Error(ErrorCode::EmptySequence, "no aligned intervals");
  return bhr(gray_bits({pair.reference}), gray_bits({pair.candidate}));
}

TrendCode trend_code(const IpiSequence& ipi) {
  if (ipi.size() < 2 || pstdev(ipi.intervals) == 0.0) {
    return trend_encode_bins(std::vector<int>(ipi.size(), 0));
  }
  return trend_encode(ipi, fit_bins(ipi));
}

}  // namespace rppg
