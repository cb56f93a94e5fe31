#pragma once

// Ground-truth generator: PPG-like pulses built from a systolic and a
// dicrotic Gaussian per beat, RGB traces carrying them, and frame tensors
// whose elliptical "skin" region reproduces the trace.

#include <cstdint>
#include <vector>

#include "rppg/pulse.hpp"
#include "rppg/signal.hpp"

namespace rppg::synth {

struct PulseModel {
  double heart_rate_bpm = 72.0;
  double systolic_width = 0.10;     // Gaussian sigma, seconds
  double dicrotic_width = 0.14;     // Gaussian sigma, seconds
  double dicrotic_amplitude = 0.4;  // relative to the systolic peak, [0,1)
  double dicrotic_delay = 0.30;     // seconds after the systolic peak
  double hrv_jitter = 0.05;         // fractional std of the beat period
  std::uint64_t seed = 42;

  void validate() const;
};

// Ellipse centre and semi-axes as fractions of the frame size.
struct Ellipse {
  double cx = 0.5;
  double cy = 0.5;
  double rx = 0.4;
  double ry = 0.45;
};

struct SceneConfig {
  std::uint32_t width = 64;
  std::uint32_t height = 64;
  double fps = 30.0;
  double duration_s = 60.0;
  Rgb pulse_strength = {0.4, 1.0, 0.6};  // intensity units per unit pulse
  Rgb baseline = {170.0, 120.0, 95.0};   // mean skin colour
  Rgb background = {40.0, 45.0, 50.0};
  double noise_std = 0.3;        // per pixel, per frame
  // Amplitude share of the pixel noise common to the whole skin region in a
  // frame (illumination flicker); the rest is independent sensor noise.
  double noise_common = 0.0;
  double texture_amplitude = 2.0;  // static per-pixel offsets, uniform +-amplitude
  double trend_amplitude = 2.0;  // slow common drift, intensity units
  double trend_hz = 0.05;
  Ellipse face{};

  std::size_t frame_count() const;
};

struct PulseTruth {
  PulseSignal pulse;
  std::vector<double> beat_times;  // systolic peak times, seconds
  IpiSequence ipi;
};

PulseTruth gen_pulse(const PulseModel& model, double fps, double duration_s);

struct TraceTruth {
  RgbTrace trace;
  PulseSignal truth;
  IpiSequence truth_ipi;
};

TraceTruth gen_trace(const PulseModel& model, const SceneConfig& scene);

struct Scene {
  FrameSequence frames;
  RoiMask mask;
  PulseSignal truth;
  IpiSequence truth_ipi;
  RgbTrace trace;  // the analytic ROI mean the frames were rendered from
};

Scene gen_frames(const PulseModel& model, const SceneConfig& scene);

RoiMask face_mask(const SceneConfig& scene);

}  // namespace rppg::synth
