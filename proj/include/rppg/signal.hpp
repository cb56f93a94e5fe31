#pragma once

// Sampled-signal types and the preprocessing chain shared by every stage:
// skin-mean reduction, smoothness-priors detrending, zero-phase band-pass,
// linear resampling and min-max normalization.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace rppg {

inline constexpr double kCardiacLowHz = 0.65;
inline constexpr double kCardiacHighHz = 4.0;
inline constexpr double kDefaultDetrendLambda = 300.0;
inline constexpr int kBandpassOrder = 4;

// Video frames, interleaved RGB, row-major, 8 bits per channel.
class FrameSequence {
 public:
  FrameSequence(std::uint32_t width, std::uint32_t height, double fps,
                std::vector<std::vector<std::uint8_t>> frames);

  std::uint32_t width() const { return width_; }
  std::uint32_t height() const { return height_; }
  double fps() const { return fps_; }
  std::size_t size() const { return frames_.size(); }
  std::size_t pixels() const { return std::size_t{width_} * height_; }

  std::span<const std::uint8_t> frame(std::size_t t) const { return frames_.at(t); }
  std::uint8_t at(std::size_t t, std::uint32_t y, std::uint32_t x, int c) const {
    return frames_[t][(std::size_t{y} * width_ + x) * 3 + c];
  }
  const std::vector<std::vector<std::uint8_t>>& frames() const { return frames_; }

  friend bool operator==(const FrameSequence&, const FrameSequence&) = default;

 private:
  std::uint32_t width_;
  std::uint32_t height_;
  double fps_;
  std::vector<std::vector<std::uint8_t>> frames_;
};

// Binary region of interest. A single mask applies to every frame; otherwise
// there is one mask per frame.
class RoiMask {
 public:
  RoiMask(std::uint32_t width, std::uint32_t height, std::vector<std::vector<std::uint8_t>> masks);

  static RoiMask filled(std::uint32_t width, std::uint32_t height, std::uint8_t value);

  std::uint32_t width() const { return width_; }
  std::uint32_t height() const { return height_; }
  bool is_static() const { return masks_.size() == 1; }
  std::size_t count() const { return masks_.size(); }

  // Mask for frame t (the static mask for every t when is_static()).
  std::span<const std::uint8_t> for_frame(std::size_t t) const;
  const std::vector<std::vector<std::uint8_t>>& masks() const { return masks_; }

  // Throws DimensionMismatch unless the mask can be paired with `frames`.
  void check_compatible(const FrameSequence& frames) const;

  friend bool operator==(const RoiMask&, const RoiMask&) = default;

 private:
  std::uint32_t width_;
  std::uint32_t height_;
  std::vector<std::vector<std::uint8_t>> masks_;
};

using Rgb = std::array<double, 3>;

struct RgbTrace {
  std::vector<Rgb> samples;
  double fps = 0.0;

  std::size_t size() const { return samples.size(); }
  std::vector<double> channel(int c) const;
  static RgbTrace from_channels(const std::vector<double>& r, const std::vector<double>& g,
                                const std::vector<double>& b, double fps);
};

struct SampledSignal {
  std::vector<double> values;
  double sample_rate = 0.0;

  std::size_t size() const { return values.size(); }
  double duration() const { return static_cast<double>(values.size()) / sample_rate; }
};

using PulseSignal = SampledSignal;

// Throws InvalidArgument on non-finite samples or a non-positive rate.
void validate(const SampledSignal& signal);
void validate(const RgbTrace& trace);

RgbTrace mean_rgb(const FrameSequence& frames, const RoiMask& mask);

struct Biquad {
  double b0, b1, b2;
  double a1, a2;  // a0 == 1
};

// Digital Butterworth band-pass (bilinear transform, prewarped edges) as a
// cascade of order/2 second-order sections. `order` must be even.
std::vector<Biquad> design_bandpass(double low_hz, double high_hz, double sample_rate,
                                    int order = kBandpassOrder);

// |H(e^{jw})| of a section cascade at `freq_hz`.
double cascade_gain(std::span<const Biquad> sections, double freq_hz, double sample_rate);

// Zero-phase band-pass: forward-backward through the section cascade with
// odd reflection padding and steady-state initial conditions.
SampledSignal bandpass(const SampledSignal& signal, double low_hz = kCardiacLowHz,
                       double high_hz = kCardiacHighHz);

// Smoothness-priors detrend: z - (I + lambda^2 D2'D2)^-1 z.
SampledSignal detrend(const SampledSignal& signal, double lambda = kDefaultDetrendLambda);

// Linear interpolation onto target_len points spanning the original support.
SampledSignal resample(const SampledSignal& signal, std::size_t target_len);
std::vector<double> resample(std::span<const double> values, std::size_t target_len);

// Affine map onto [0,1]; a constant input maps to all 0.5.
SampledSignal normalize01(const SampledSignal& signal);
std::vector<double> normalize01(std::span<const double> values);

struct PreprocessConfig {
  double detrend_lambda = kDefaultDetrendLambda;
  double low_hz = kCardiacLowHz;
  double high_hz = kCardiacHighHz;
};

// detrend followed by band-pass.
SampledSignal preprocess(const SampledSignal& signal, const PreprocessConfig& config = {});
RgbTrace preprocess(const RgbTrace& trace, const PreprocessConfig& config = {});

double mean(std::span<const double> values);
// Population (divide by N) standard deviation.
double pstdev(std::span<const double> values);

// One-sided periodogram |X_k|^2 for k = 0..N/2; bin k sits at k*rate/N Hz.
std::vector<double> power_spectrum(std::span<const double> values);

// Sum and maximum of the periodogram over bins inside [low_hz, high_hz].
double band_energy(std::span<const double> values, double sample_rate,
                   double low_hz = kCardiacLowHz, double high_hz = kCardiacHighHz);
double band_peak_power(std::span<const double> values, double sample_rate,
                       double low_hz = kCardiacLowHz, double high_hz = kCardiacHighHz);

}  // namespace rppg
