#pragma once

// SigH: hide the facial pulse by superimposing a decoy waveform on a blurred
// ROI template, frame by frame.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rppg/pulse.hpp"
#include "rppg/signal.hpp"

namespace rppg::sigh {

inline constexpr int kKernelSize = 30;
inline constexpr double kDefaultAmplitude = 2.0;
inline constexpr double kDefaultFrequencyHz = 1.5;

// Row-major scalar image.
struct Field {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<double> values;

  double at(std::uint32_t y, std::uint32_t x) const { return values[std::size_t{y} * width + x]; }
};

// size x size box with every entry 1/size^2.
struct UniformKernel {
  int size = kKernelSize;
  double coefficient() const { return 1.0 / (static_cast<double>(size) * size); }
  Field as_field() const;
};

// 1 inside the ROI of frame `frame_index`, 0 elsewhere.
Field build_template(const RoiMask& mask, std::size_t frame_index);

// Box blur with mirror (reflect-101) borders. The window around pixel x
// spans x - size/2 .. x + size - 1 - size/2.
Field blur_template(const Field& base, const UniformKernel& kernel = {});

enum class WaveKind { Sine, Custom };

// amplitude * sin(2 pi f t / fps), t = 0..n_frames-1; f must lie in the
// cardiac band.
std::vector<double> sine_waveform(double freq_hz, double fps, std::size_t n_frames, double amplitude);

// Linear resample onto n_frames, scaled by amplitude / max|samples|.
std::vector<double> custom_waveform(std::span<const double> samples, std::size_t n_frames, double amplitude);

struct InjectionConfig {
  // Per-channel gain of the injected waveform. Green-dominant like the skin
  // pulse itself so chrominance-based extractors cannot separate the decoy.
  std::array<double, 3> channel_weights = {0.4, 1.0, 0.6};
  UniformKernel kernel{};
};

// Frame_f(t) = clamp(round(Frame_o(t) + w_c * blurred(t) * waveform(t)), 0, 255).
FrameSequence inject(const FrameSequence& video, const RoiMask& mask, std::span<const double> waveform,
                     const InjectionConfig& config = {});

struct HidingReport {
  double original_vs_truth = 0.0;  // |pearson|
  double original_vs_wave = 0.0;
  double protected_vs_truth = 0.0;
  double protected_vs_wave = 0.0;
  bool hidden = false;
};

inline constexpr double kMaxResidualTruthCorrelation = 0.3;
inline constexpr double kMinDecoyCorrelation = 0.7;

// CHROM extraction on both videos, compared against the band-limited truth
// pulse and injected waveform.
HidingReport verify_hiding(const FrameSequence& original, const FrameSequence& protected_video, const RoiMask& mask,
                           const PulseSignal& truth_pulse, std::span<const double> waveform);

}  // namespace rppg::sigh
