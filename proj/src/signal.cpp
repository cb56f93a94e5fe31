#include "rppg/signal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <unsupported/Eigen/FFT>

#include "rppg/error.hpp"

namespace rppg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidBand: return "InvalidBand";
    case ErrorCode::SignalTooShort: return "SignalTooShort";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateTrace: return "DegenerateTrace";
    case ErrorCode::WindowTooLong: return "WindowTooLong";
    case ErrorCode::NoPeaks: return "NoPeaks";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::DegenerateSequence: return "DegenerateSequence";
    case ErrorCode::MalformedBits: return "MalformedBits";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::EmptyBits: return "EmptyBits";
    case ErrorCode::EmptyScores: return "EmptyScores";
    case ErrorCode::TooFewCycles: return "TooFewCycles";
    case ErrorCode::BadCycle: return "BadCycle";
    case ErrorCode::EmptyCycleSet: return "EmptyCycleSet";
    case ErrorCode::FrequencyOutOfBand: return "FrequencyOutOfBand";
    case ErrorCode::BadCustomSignal: return "BadCustomSignal";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BadModel: return "BadModel";
    case ErrorCode::SceneTooSmall: return "SceneTooSmall";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Format: return "Format";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Containers

FrameSequence::FrameSequence(std::uint32_t width, std::uint32_t height, double fps,
                             std::vector<std::vector<std::uint8_t>> frames)
    : width_(width), height_(height), fps_(fps), frames_(std::move(frames)) {
  if (width == 0 || height == 0) throw Error(ErrorCode::InvalidArgument, "empty frame size");
  if (!(fps > 0.0) || !std::isfinite(fps)) throw Error(ErrorCode::InvalidArgument, "fps must be > 0");
  if (frames_.empty()) throw Error(ErrorCode::InvalidArgument, "frame sequence is empty");
  const std::size_t expected = pixels() * 3;
  for (const auto& f : frames_) {
    if (f.size() != expected) throw Error(ErrorCode::DimensionMismatch, "frame buffer size mismatch");
  }
}

RoiMask::RoiMask(std::uint32_t width, std::uint32_t height,
                 std::vector<std::vector<std::uint8_t>> masks)
    : width_(width), height_(height), masks_(std::move(masks)) {
  if (width == 0 || height == 0) throw Error(ErrorCode::InvalidArgument, "empty mask size");
  if (masks_.empty()) throw Error(ErrorCode::InvalidArgument, "mask list is empty");
  const std::size_t expected = std::size_t{width} * height;
  for (const auto& m : masks_) {
    if (m.size() != expected) throw Error(ErrorCode::DimensionMismatch, "mask buffer size mismatch");
    for (auto v : m) {
      if (v > 1) throw Error(ErrorCode::InvalidArgument, "mask values must be 0 or 1");
    }
  }
}

RoiMask RoiMask::filled(std::uint32_t width, std::uint32_t height, std::uint8_t value) {
  return RoiMask(width, height, {std::vector<std::uint8_t>(std::size_t{width} * height, value)});
}

std::span<const std::uint8_t> RoiMask::for_frame(std::size_t t) const {
  return is_static() ? masks_.front() : masks_.at(t);
}

void RoiMask::check_compatible(const FrameSequence& frames) const {
  if (width_ != frames.width() || height_ != frames.height())
    throw Error(ErrorCode::DimensionMismatch, "mask and frame sizes differ");
  if (!is_static() && masks_.size() != frames.size())
    throw Error(ErrorCode::DimensionMismatch, "per-frame mask count differs from frame count");
}

std::vector<double> RgbTrace::channel(int c) const {
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = samples[i][c];
  return out;
}

RgbTrace RgbTrace::from_channels(const std::vector<double>& r, const std::vector<double>& g,
                                 const std::vector<double>& b, double fps) {
  if (r.size() != g.size() || r.size() != b.size())
    throw Error(ErrorCode::LengthMismatch, "channel lengths differ");
  RgbTrace trace;
  trace.fps = fps;
  trace.samples.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) trace.samples[i] = {r[i], g[i], b[i]};
  return trace;
}

void validate(const SampledSignal& signal) {
  if (!(signal.sample_rate > 0.0) || !std::isfinite(signal.sample_rate))
    throw Error(ErrorCode::InvalidArgument, "sample rate must be > 0");
  for (double v : signal.values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite sample");
  }
}

void validate(const RgbTrace& trace) {
  if (!(trace.fps > 0.0) || !std::isfinite(trace.fps))
    throw Error(ErrorCode::InvalidArgument, "trace fps must be > 0");
  for (const auto& s : trace.samples) {
    for (double v : s) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite trace sample");
    }
  }
}

// ---------------------------------------------------------------------------
// Skin-mean reduction

RgbTrace mean_rgb(const FrameSequence& frames, const RoiMask& mask) {
  mask.check_compatible(frames);
  RgbTrace trace;
  trace.fps = frames.fps();
  trace.samples.reserve(frames.size());
  const std::size_t n_pix = frames.pixels();
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const auto m = mask.for_frame(t);
    const auto f = frames.frame(t);
    std::uint64_t sum[3] = {0, 0, 0};
    std::uint64_t count = 0;
    for (std::size_t p = 0; p < n_pix; ++p) {
      if (!m[p]) continue;
      ++count;
      sum[0] += f[p * 3];
      sum[1] += f[p * 3 + 1];
      sum[2] += f[p * 3 + 2];
    }
    if (count == 0) throw Error(ErrorCode::EmptyMask, "mask selects no pixels in frame " + std::to_string(t));
    const double n = static_cast<double>(count);
    trace.samples.push_back({sum[0] / n, sum[1] / n, sum[2] / n});
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Band-pass

std::vector<Biquad> design_bandpass(double low_hz, double high_hz, double sample_rate, int order) {
  if (!(sample_rate > 0.0)) throw Error(ErrorCode::InvalidBand, "sample rate must be > 0");
  if (!(low_hz > 0.0 && low_hz < high_hz && high_hz < sample_rate / 2.0))
    throw Error(ErrorCode::InvalidBand, "require 0 < low < high < rate/2");
  if (order < 2 || order % 2 != 0) throw Error(ErrorCode::InvalidArgument, "band-pass order must be even");

  using cplx = std::complex<double>;
  const double fs2 = 2.0 * sample_rate;
  const double w1 = fs2 * std::tan(std::numbers::pi * low_hz / sample_rate);
  const double w2 = fs2 * std::tan(std::numbers::pi * high_hz / sample_rate);
  const double bw = w2 - w1;
  const double w0sq = w1 * w2;

  const int proto = order / 2;
  std::vector<cplx> zpoles;
  for (int k = 0; k < proto; ++k) {
    const cplx p = std::polar(1.0, std::numbers::pi * (2.0 * k + proto + 1) / (2.0 * proto));
    // Low-pass to band-pass: each prototype pole becomes the two roots of
    // s^2 - p*bw*s + w0^2.
    const cplx disc = std::sqrt(p * p * bw * bw - 4.0 * w0sq);
    for (const cplx s : {(p * bw + disc) / 2.0, (p * bw - disc) / 2.0}) {
      zpoles.push_back((fs2 + s) / (fs2 - s));
    }
  }

  std::vector<Biquad> sections;
  std::vector<double> real_poles;
  for (const auto& z : zpoles) {
    if (z.imag() > 1e-12) {
      sections.push_back({1.0, 0.0, -1.0, -2.0 * z.real(), std::norm(z)});
    } else if (std::abs(z.imag()) <= 1e-12) {
      real_poles.push_back(z.real());
    }
  }
  for (std::size_t i = 0; i + 1 < real_poles.size(); i += 2) {
    const double p1 = real_poles[i];
    const double p2 = real_poles[i + 1];
    sections.push_back({1.0, 0.0, -1.0, -(p1 + p2), p1 * p2});
  }

  // Unit gain at the geometric centre, which is exact for a Butterworth band-pass.
  const double f0 = sample_rate / std::numbers::pi * std::atan(std::sqrt(w0sq) / fs2);
  const double g = cascade_gain(sections, f0, sample_rate);
  const double per = std::pow(g, -1.0 / static_cast<double>(sections.size()));
  for (auto& s : sections) {
    s.b0 *= per;
    s.b1 *= per;
    s.b2 *= per;
  }
  return sections;
}

double cascade_gain(std::span<const Biquad> sections, double freq_hz, double sample_rate) {
  const std::complex<double> zi = std::polar(1.0, -2.0 * std::numbers::pi * freq_hz / sample_rate);
  const auto zi2 = zi * zi;
  double gain = 1.0;
  for (const auto& s : sections) {
    gain *= std::abs((s.b0 + s.b1 * zi + s.b2 * zi2) / (1.0 + s.a1 * zi + s.a2 * zi2));
  }
  return gain;
}

namespace {

// Direct form II transposed, state primed for a constant input equal to x[0].
void filter_cascade(std::span<const Biquad> sections, std::vector<double>& x) {
  if (x.empty()) return;
  double u0 = x.front();
  for (const auto& s : sections) {
    const double dc = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
    const double y0 = dc * u0;
    double z1 = y0 - s.b0 * u0;
    double z2 = s.b2 * u0 - s.a2 * y0;
    for (double& v : x) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
    u0 = y0;
  }
}

}  // namespace

SampledSignal bandpass(const SampledSignal& signal, double low_hz, double high_hz) {
  validate(signal);
  const auto sections = design_bandpass(low_hz, high_hz, signal.sample_rate, kBandpassOrder);
  const std::size_t n = signal.size();
  if (n < 3 * static_cast<std::size_t>(kBandpassOrder))
    throw Error(ErrorCode::SignalTooShort, "band-pass needs at least 3x the filter order in samples");

  const std::size_t pad = std::min<std::size_t>(n - 1, 3 * (kBandpassOrder + 1));
  const auto& x = signal.values;
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  // Mirror padding without repeating the edge sample.
  for (std::size_t i = pad; i >= 1; --i) ext.push_back(x[i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 1; i <= pad; ++i) ext.push_back(x[n - 1 - i]);

  filter_cascade(sections, ext);
  std::reverse(ext.begin(), ext.end());
  filter_cascade(sections, ext);
  std::reverse(ext.begin(), ext.end());

  SampledSignal out{{ext.begin() + static_cast<std::ptrdiff_t>(pad),
                     ext.begin() + static_cast<std::ptrdiff_t>(pad + n)},
                    signal.sample_rate};
  return out;
}

// ---------------------------------------------------------------------------
// Detrend

SampledSignal detrend(const SampledSignal& signal, double lambda) {
  validate(signal);
  const auto n = static_cast<Eigen::Index>(signal.size());
  if (n < 3) throw Error(ErrorCode::SignalTooShort, "detrend needs at least 3 samples");
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be > 0");

  // A = I + lambda^2 D2'D2, pentadiagonal and symmetric positive definite.
  Eigen::SparseMatrix<double> d2(n - 2, n);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(3 * (n - 2)));
  for (Eigen::Index i = 0; i < n - 2; ++i) {
    trip.emplace_back(i, i, 1.0);
    trip.emplace_back(i, i + 1, -2.0);
    trip.emplace_back(i, i + 2, 1.0);
  }
  d2.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseMatrix<double> a = lambda * lambda * (Eigen::SparseMatrix<double>(d2.transpose()) * d2);
  for (Eigen::Index i = 0; i < n; ++i) a.coeffRef(i, i) += 1.0;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::InvalidArgument, "detrend factorization failed");
  const Eigen::Map<const Eigen::VectorXd> z(signal.values.data(), n);
  const Eigen::VectorXd trend = solver.solve(z);

  SampledSignal out{std::vector<double>(signal.size()), signal.sample_rate};
  for (Eigen::Index i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = z[i] - trend[i];
  return out;
}

// ---------------------------------------------------------------------------
// Resample / normalize

std::vector<double> resample(std::span<const double> values, std::size_t target_len) {
  const std::size_t n = values.size();
  if (n < 2) throw Error(ErrorCode::SignalTooShort, "resample needs at least 2 samples");
  if (target_len == 0) throw Error(ErrorCode::InvalidArgument, "target length must be positive");
  if (target_len == 1) return {values.front()};

  std::vector<double> out(target_len);
  const double span_in = static_cast<double>(n - 1);
  const double span_out = static_cast<double>(target_len - 1);
  for (std::size_t i = 0; i < target_len; ++i) {
    const double pos = static_cast<double>(i) * span_in / span_out;
    std::size_t idx = static_cast<std::size_t>(std::floor(pos));
    if (idx >= n - 1) idx = n - 2;
    const double frac = pos - static_cast<double>(idx);
    out[i] = (1.0 - frac) * values[idx] + frac * values[idx + 1];
  }
  return out;
}

SampledSignal resample(const SampledSignal& signal, std::size_t target_len) {
  validate(signal);
  SampledSignal out{resample(std::span<const double>(signal.values), target_len), signal.sample_rate};
  if (signal.size() > 1 && target_len > 1) {
    out.sample_rate = signal.sample_rate * static_cast<double>(target_len - 1) /
                      static_cast<double>(signal.size() - 1);
  }
  return out;
}

std::vector<double> normalize01(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::SignalTooShort, "normalize needs at least 1 sample");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double range = *hi - *lo;
  std::vector<double> out(values.size(), 0.5);
  if (range > 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - min) / range;
  }
  return out;
}

SampledSignal normalize01(const SampledSignal& signal) {
  return {normalize01(std::span<const double>(signal.values)), signal.sample_rate};
}

SampledSignal preprocess(const SampledSignal& signal, const PreprocessConfig& config) {
  return bandpass(detrend(signal, config.detrend_lambda), config.low_hz, config.high_hz);
}

RgbTrace preprocess(const RgbTrace& trace, const PreprocessConfig& config) {
  validate(trace);
  std::array<std::vector<double>, 3> ch;
  for (int c = 0; c < 3; ++c) {
    ch[c] = preprocess(SampledSignal{trace.channel(c), trace.fps}, config).values;
  }
  return RgbTrace::from_channels(ch[0], ch[1], ch[2], trace.fps);
}

// ---------------------------------------------------------------------------
// Statistics / spectra

double mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptySeries, "mean of empty series");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double pstdev(std::span<const double> values) {
  const double m = mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - m) * (v - m);
  return std::sqrt(acc / static_cast<double>(values.size()));
}

std::vector<double> power_spectrum(std::span<const double> values) {
  if (values.empty()) return {};
  Eigen::FFT<double> fft;
  std::vector<double> in(values.begin(), values.end());
  std::vector<std::complex<double>> out;
  fft.fwd(out, in);
  std::vector<double> power(values.size() / 2 + 1);
  for (std::size_t k = 0; k < power.size(); ++k) power[k] = std::norm(out[k]);
  return power;
}

namespace {

template <typename Reduce>
double reduce_band(std::span<const double> values, double rate, double low, double high, Reduce reduce) {
  const auto power = power_spectrum(values);
  const double n = static_cast<double>(values.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < power.size(); ++k) {
    const double f = static_cast<double>(k) * rate / n;
    if (f >= low && f <= high) acc = reduce(acc, power[k]);
  }
  return acc;
}

}  // namespace

double band_energy(std::span<const double> values, double sample_rate, double low_hz, double high_hz) {
  return reduce_band(values, sample_rate, low_hz, high_hz, [](double a, double p) { return a + p; });
}

double band_peak_power(std::span<const double> values, double sample_rate, double low_hz, double high_hz) {
  return reduce_band(values, sample_rate, low_hz, high_hz, [](double a, double p) { return std::max(a, p); });
}

}  // namespace rppg
