#include "rppg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "rppg/error.hpp"

namespace rppg::synth {

namespace {

constexpr double kMaxPeriod = 60.0 / 39.0;

std::mt19937_64 stream(std::uint64_t seed, std::uint32_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), purpose};
  return std::mt19937_64(seq);
}

void validate_scene(const SceneConfig& s) {
  if (s.width < 8 || s.height < 8) throw Error(ErrorCode::SceneTooSmall, "scene must be at least 8x8 pixels");
  if (!(s.fps > 0.0) || !(s.duration_s > 0.0) || s.frame_count() < 1)
    throw Error(ErrorCode::BadModel, "scene needs positive fps and duration");
  if (!(s.pulse_strength[1] > 0.0)) throw Error(ErrorCode::BadModel, "green pulse strength must be > 0");
  if (!(s.noise_common >= 0.0 && s.noise_common <= 1.0))
    throw Error(ErrorCode::BadModel, "common noise share must lie in [0,1]");
  if (!(s.noise_std >= 0.0) || !(s.texture_amplitude >= 0.0) || !(s.trend_amplitude >= 0.0))
    throw Error(ErrorCode::BadModel, "noise, texture and trend magnitudes must be >= 0");
}

struct Rendered {
  RgbTrace trace;
  std::optional<FrameSequence> frames;
};

Rendered render(const PulseModel& model, const SceneConfig& scene, const PulseSignal& pulse, const RoiMask& mask,
                bool with_frames) {
  const std::size_t n_pix = std::size_t{scene.width} * scene.height;
  const auto& m = mask.masks().front();
  std::vector<std::size_t> roi;
  for (std::size_t p = 0; p < n_pix; ++p) {
    if (m[p]) roi.push_back(p);
  }

  auto rng = stream(model.seed, 2);
  std::uniform_real_distribution<double> tex(-scene.texture_amplitude, scene.texture_amplitude);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Static texture; the ROI part is re-centred so its spatial mean is zero
  // and the trace baseline stays exactly `baseline`.
  std::vector<double> texture(n_pix * 3);
  for (double& v : texture) v = scene.texture_amplitude > 0.0 ? tex(rng) : 0.0;
  for (int c = 0; c < 3; ++c) {
    double acc = 0.0;
    for (auto p : roi) acc += texture[p * 3 + c];
    const double mu = acc / static_cast<double>(roi.size());
    for (auto p : roi) texture[p * 3 + c] -= mu;
  }

  std::vector<std::uint8_t> background(n_pix * 3);
  for (std::size_t p = 0; p < n_pix; ++p) {
    for (int c = 0; c < 3; ++c) {
      const double v = scene.background[c] + texture[p * 3 + c];
      background[p * 3 + c] = static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
    }
  }

  Rendered out;
  out.trace.fps = scene.fps;
  out.trace.samples.reserve(pulse.size());
  std::vector<std::vector<std::uint8_t>> frames;
  if (with_frames) frames.reserve(pulse.size());

  const double n_roi = static_cast<double>(roi.size());
  const double independent = scene.noise_std * std::sqrt(1.0 - scene.noise_common * scene.noise_common);
  for (std::size_t t = 0; t < pulse.size(); ++t) {
    const double time = static_cast<double>(t) / scene.fps;
    const double drift = scene.trend_amplitude * std::sin(2.0 * std::numbers::pi * scene.trend_hz * time);
    Rgb value{};
    for (int c = 0; c < 3; ++c) value[c] = scene.baseline[c] + scene.pulse_strength[c] * pulse.values[t] + drift;

    std::vector<std::uint8_t> frame;
    if (with_frames) frame = background;
    Rgb shared{0.0, 0.0, 0.0};
    if (scene.noise_std > 0.0 && scene.noise_common > 0.0) {
      for (double& v : shared) v = scene.noise_std * scene.noise_common * gauss(rng);
    }
    Rgb noise_sum{0.0, 0.0, 0.0};
    for (auto p : roi) {
      for (int c = 0; c < 3; ++c) {
        const double e = shared[c] + (independent > 0.0 ? independent * gauss(rng) : 0.0);
        noise_sum[c] += e;
        if (with_frames) {
          const double v = value[c] + texture[p * 3 + c] + e;
          frame[p * 3 + c] = static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
        }
      }
    }
    out.trace.samples.push_back(
        {value[0] + noise_sum[0] / n_roi, value[1] + noise_sum[1] / n_roi, value[2] + noise_sum[2] / n_roi});
    if (with_frames) frames.push_back(std::move(frame));
  }
  if (with_frames) out.frames.emplace(scene.width, scene.height, scene.fps, std::move(frames));
  return out;
}

}  // namespace

void PulseModel::validate() const {
  if (!(heart_rate_bpm >= 39.0 && heart_rate_bpm <= 240.0)) throw Error(ErrorCode::BadModel, "heart rate outside 39-240 bpm");
  if (!(systolic_width > 0.0) || !(dicrotic_width > 0.0)) throw Error(ErrorCode::BadModel, "pulse widths must be > 0");
  if (!(dicrotic_amplitude >= 0.0 && dicrotic_amplitude < 1.0)) throw Error(ErrorCode::BadModel, "dicrotic amplitude outside [0,1)");
  if (!(dicrotic_delay > 0.0)) throw Error(ErrorCode::BadModel, "dicrotic delay must be > 0");
  if (!(hrv_jitter >= 0.0)) throw Error(ErrorCode::BadModel, "jitter must be >= 0");
}

std::size_t SceneConfig::frame_count() const {
  return static_cast<std::size_t>(std::llround(duration_s * fps));
}

PulseTruth gen_pulse(const PulseModel& model, double fps, double duration_s) {
  model.validate();
  if (!(fps > 0.0) || !(duration_s > 0.0)) throw Error(ErrorCode::BadModel, "fps and duration must be > 0");
  if (fps < 2.0 * model.heart_rate_bpm / 60.0) throw Error(ErrorCode::BadModel, "fps below twice the heart-rate frequency");

  auto rng = stream(model.seed, 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double base = 60.0 / model.heart_rate_bpm;
  auto period = [&] {
    const double z = model.hrv_jitter > 0.0 ? gauss(rng) : 0.0;
    return std::clamp(base * (1.0 + model.hrv_jitter * z), kMinIpiSeconds, kMaxPeriod);
  };

  PulseTruth truth;
  double c = period() / 2.0;
  while (c < duration_s) {
    truth.beat_times.push_back(c);
    c += period();
  }
  for (std::size_t i = 0; i + 1 < truth.beat_times.size(); ++i) {
    truth.ipi.intervals.push_back(truth.beat_times[i + 1] - truth.beat_times[i]);
  }

  const auto n = static_cast<std::size_t>(std::llround(duration_s * fps));
  truth.pulse = {std::vector<double>(n, 0.0), fps};
  const double reach = 6.0 * std::max(model.systolic_width, model.dicrotic_width) + model.dicrotic_delay;
  const double s2 = 2.0 * model.systolic_width * model.systolic_width;
  const double d2 = 2.0 * model.dicrotic_width * model.dicrotic_width;
  for (double beat : truth.beat_times) {
    const auto lo = static_cast<std::ptrdiff_t>(std::floor((beat - reach) * fps));
    const auto hi = static_cast<std::ptrdiff_t>(std::ceil((beat + reach) * fps));
    for (auto i = std::max<std::ptrdiff_t>(lo, 0); i <= hi && i < static_cast<std::ptrdiff_t>(n); ++i) {
      const double t = static_cast<double>(i) / fps;
      const double ds = t - beat;
      const double dd = t - beat - model.dicrotic_delay;
      truth.pulse.values[static_cast<std::size_t>(i)] +=
          std::exp(-ds * ds / s2) + model.dicrotic_amplitude * std::exp(-dd * dd / d2);
    }
  }
  return truth;
}

RoiMask face_mask(const SceneConfig& scene) {
  if (scene.width < 8 || scene.height < 8) throw Error(ErrorCode::SceneTooSmall, "scene must be at least 8x8 pixels");
  std::vector<std::uint8_t> m(std::size_t{scene.width} * scene.height, 0);
  const double cx = scene.face.cx * scene.width;
  const double cy = scene.face.cy * scene.height;
  const double rx = scene.face.rx * scene.width;
  const double ry = scene.face.ry * scene.height;
  std::size_t count = 0;
  for (std::uint32_t y = 0; y < scene.height; ++y) {
    for (std::uint32_t x = 0; x < scene.width; ++x) {
      const double dx = (x + 0.5 - cx) / rx;
      const double dy = (y + 0.5 - cy) / ry;
      if (dx * dx + dy * dy <= 1.0) {
        m[std::size_t{y} * scene.width + x] = 1;
        ++count;
      }
    }
  }
  if (count == 0) throw Error(ErrorCode::SceneTooSmall, "face ellipse covers no pixels");
  return RoiMask(scene.width, scene.height, {std::move(m)});
}

TraceTruth gen_trace(const PulseModel& model, const SceneConfig& scene) {
  validate_scene(scene);
  auto truth = gen_pulse(model, scene.fps, scene.duration_s);
  const auto mask = face_mask(scene);
  auto rendered = render(model, scene, truth.pulse, mask, false);
  return {std::move(rendered.trace), std::move(truth.pulse), std::move(truth.ipi)};
}

Scene gen_frames(const PulseModel& model, const SceneConfig& scene) {
  validate_scene(scene);
  auto truth = gen_pulse(model, scene.fps, scene.duration_s);
  auto mask = face_mask(scene);
  auto rendered = render(model, scene, truth.pulse, mask, true);
  return {std::move(*rendered.frames), std::move(mask), std::move(truth.pulse), std::move(truth.ipi),
          std::move(rendered.trace)};
}

}  // namespace rppg::synth
