#include "rppg/sigh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rppg/error.hpp"
#include "rppg/metrics.hpp"
#include "rppg/pipeline.hpp"

namespace rppg::sigh {

namespace {

// Mirror index without repeating the edge sample: ...2 1 | 0 1 2 ... n-1 | n-2 ...
std::int64_t reflect101(std::int64_t i, std::int64_t n) {
  if (n == 1) return 0;
  const std::int64_t period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

// Un-normalized box sums along one axis. `stride` steps between neighbours
// along the axis, `lines`/`line_stride` enumerate the orthogonal lines.
void box_sum_axis(const std::vector<double>& in, std::vector<double>& out, std::int64_t n, std::int64_t stride,
                  std::int64_t lines, std::int64_t line_stride, int size) {
  const std::int64_t half = size / 2;
  for (std::int64_t l = 0; l < lines; ++l) {
    const std::int64_t base = l * line_stride;
    auto sample = [&](std::int64_t i) { return in[static_cast<std::size_t>(base + reflect101(i, n) * stride)]; };
    double acc = 0.0;
    for (std::int64_t k = -half; k < size - half; ++k) acc += sample(k);
    for (std::int64_t x = 0; x < n; ++x) {
      out[static_cast<std::size_t>(base + x * stride)] = acc;
      acc += sample(x + size - half) - sample(x - half);
    }
  }
}

double safe_abs_corr(std::span<const double> a, std::span<const double> b) {
  try {
    return std::abs(pearson(a, b));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroVariance) return 0.0;
    throw;
  }
}

}  // namespace

Field UniformKernel::as_field() const {
  const auto s = static_cast<std::uint32_t>(size);
  return {s, s, std::vector<double>(std::size_t{s} * s, coefficient())};
}

Field build_template(const RoiMask& mask, std::size_t frame_index) {
  if (!mask.is_static() && frame_index >= mask.count())
    throw Error(ErrorCode::DimensionMismatch, "frame index beyond the per-frame masks");
  const auto m = mask.for_frame(frame_index);
  Field f{mask.width(), mask.height(), std::vector<double>(m.size())};
  for (std::size_t i = 0; i < m.size(); ++i) f.values[i] = m[i];
  return f;
}

Field blur_template(const Field& base, const UniformKernel& kernel) {
  if (base.width == 0 || base.height == 0 || base.values.size() != std::size_t{base.width} * base.height)
    throw Error(ErrorCode::DimensionMismatch, "field buffer does not match its size");
  if (kernel.size < 1) throw Error(ErrorCode::InvalidArgument, "kernel size must be positive");
  const std::int64_t w = base.width;
  const std::int64_t h = base.height;
  std::vector<double> rows(base.values.size());
  std::vector<double> both(base.values.size());
  box_sum_axis(base.values, rows, w, 1, h, w, kernel.size);
  box_sum_axis(rows, both, h, w, w, 1, kernel.size);
  const double c = kernel.coefficient();
  for (double& v : both) v *= c;
  return {base.width, base.height, std::move(both)};
}

std::vector<double> sine_waveform(double freq_hz, double fps, std::size_t n_frames, double amplitude) {
  if (!(freq_hz >= kCardiacLowHz && freq_hz <= kCardiacHighHz))
    throw Error(ErrorCode::FrequencyOutOfBand, "decoy frequency must lie in 0.65-4.0 Hz");
  if (!(fps > 0.0)) throw Error(ErrorCode::InvalidArgument, "fps must be > 0");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw Error(ErrorCode::InvalidArgument, "amplitude must be >= 0");
  std::vector<double> out(n_frames);
  for (std::size_t t = 0; t < n_frames; ++t) {
    out[t] = amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(t) / fps);
  }
  return out;
}

std::vector<double> custom_waveform(std::span<const double> samples, std::size_t n_frames, double amplitude) {
  if (samples.size() < 2) throw Error(ErrorCode::BadCustomSignal, "custom waveform needs at least 2 samples");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw Error(ErrorCode::InvalidArgument, "amplitude must be >= 0");
  double peak = 0.0;
  for (double v : samples) {
    if (!std::isfinite(v)) throw Error(ErrorCode::BadCustomSignal, "custom waveform has a non-finite sample");
    peak = std::max(peak, std::abs(v));
  }
  if (peak == 0.0) throw Error(ErrorCode::BadCustomSignal, "custom waveform is identically zero");
  auto out = resample(samples, n_frames);
  const double scale = amplitude / peak;
  for (double& v : out) v *= scale;
  return out;
}

FrameSequence inject(const FrameSequence& video, const RoiMask& mask, std::span<const double> waveform,
                     const InjectionConfig& config) {
  mask.check_compatible(video);
  if (waveform.size() != video.size()) throw Error(ErrorCode::LengthMismatch, "waveform length differs from frame count");

  std::vector<std::vector<std::uint8_t>> out;
  out.reserve(video.size());
  Field blurred;
  for (std::size_t t = 0; t < video.size(); ++t) {
    if (t == 0 || !mask.is_static()) blurred = blur_template(build_template(mask, t), config.kernel);
    const auto src = video.frame(t);
    std::vector<std::uint8_t> dst(src.begin(), src.end());
    const double wave = waveform[t];
    if (wave != 0.0) {
      for (std::size_t p = 0; p < blurred.values.size(); ++p) {
        const double b = blurred.values[p];
        if (b == 0.0) continue;
        for (int c = 0; c < 3; ++c) {
          const double v = static_cast<double>(src[p * 3 + c]) + config.channel_weights[c] * b * wave;
          dst[p * 3 + c] = static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
        }
      }
    }
    out.push_back(std::move(dst));
  }
  return FrameSequence(video.width(), video.height(), video.fps(), std::move(out));
}

HidingReport verify_hiding(const FrameSequence& original, const FrameSequence& protected_video, const RoiMask& mask,
                           const PulseSignal& truth_pulse, std::span<const double> waveform) {
  if (original.width() != protected_video.width() || original.height() != protected_video.height() ||
      original.size() != protected_video.size() || original.fps() != protected_video.fps())
    throw Error(ErrorCode::DimensionMismatch, "original and protected videos differ in shape");
  if (truth_pulse.size() != original.size() || waveform.size() != original.size())
    throw Error(ErrorCode::LengthMismatch, "truth and waveform must have one sample per frame");

  const auto before = extract_pulse(original, mask, Method::Chrom);
  const auto after = extract_pulse(protected_video, mask, Method::Chrom);
  const auto truth = reference_pulse(truth_pulse);
  const auto decoy = reference_pulse({std::vector<double>(waveform.begin(), waveform.end()), original.fps()});

  HidingReport r;
  r.original_vs_truth = safe_abs_corr(before.values, truth.values);
  r.original_vs_wave = safe_abs_corr(before.values, decoy.values);
  r.protected_vs_truth = safe_abs_corr(after.values, truth.values);
  r.protected_vs_wave = safe_abs_corr(after.values, decoy.values);
  r.hidden = r.protected_vs_truth <= kMaxResidualTruthCorrelation && r.protected_vs_wave >= kMinDecoyCorrelation;
  return r;
}

}  // namespace rppg::sigh
