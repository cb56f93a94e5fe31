#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>

#include "rppg/auth.hpp"
#include "rppg/error.hpp"
#include "rppg/io.hpp"
#include "rppg/metrics.hpp"
#include "rppg/pipeline.hpp"
#include "rppg/sigh.hpp"
#include "rppg/synth.hpp"

namespace rppg::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_input(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw Error(ErrorCode::Io, "cannot read " + path);
}

void require_output(const std::string& path) {
  if (path.empty()) return;
  const auto parent = fs::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty() && !fs::is_directory(parent, ec))
    throw Error(ErrorCode::Io, "output directory does not exist: " + parent.string());
}

double parse_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("value for " + key + " is not a number: " + text);
  return v;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void write_json(const std::string& path, const json& j) { io::write_atomic(path, j.dump(2) + "\n"); }

std::optional<double> pearson_or_null(const PairedSeries& p) {
  try {
    return pearson(p);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroVariance) return std::nullopt;
    throw;
  }
}

Method method_from(const std::string& name) {
  const auto m = parse_method(name);
  if (!m) throw UsageError("unknown method: " + name);
  return *m;
}

CycleSet ppg_cycles(const std::string& path) {
  require_input(path);
  const auto pulse = reference_pulse(io::parse_signal_csv(io::read_file(path)));
  return segment_cycles(pulse, detect_peaks(pulse));
}

// synth ---------------------------------------------------------------------

struct SynthArgs {
  std::string video;
  std::string mask;
  std::string truth;
  std::string ipi;
  std::string trace;
  std::vector<std::string> sets;
};

void apply_setting(synth::PulseModel& model, synth::SceneConfig& scene, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos) throw UsageError("expected key=value, got " + item);
  const std::string key = item.substr(0, eq);
  const double v = parse_number(key, item.substr(eq + 1));
  auto dim = [&](std::uint32_t& field) {
    if (v < 0.0 || v > 1 << 16 || v != std::floor(v)) throw UsageError(key + " must be a non-negative integer");
    field = static_cast<std::uint32_t>(v);
  };
  const std::map<std::string, std::function<void()>> table = {
      {"bpm", [&] { model.heart_rate_bpm = v; }},
      {"systolic_width", [&] { model.systolic_width = v; }},
      {"dicrotic_width", [&] { model.dicrotic_width = v; }},
      {"dicrotic_amplitude", [&] { model.dicrotic_amplitude = v; }},
      {"dicrotic_delay", [&] { model.dicrotic_delay = v; }},
      {"hrv_jitter", [&] { model.hrv_jitter = v; }},
      {"width", [&] { dim(scene.width); }},
      {"height", [&] { dim(scene.height); }},
      {"fps", [&] { scene.fps = v; }},
      {"duration", [&] { scene.duration_s = v; }},
      {"strength_r", [&] { scene.pulse_strength[0] = v; }},
      {"strength_g", [&] { scene.pulse_strength[1] = v; }},
      {"strength_b", [&] { scene.pulse_strength[2] = v; }},
      {"noise_std", [&] { scene.noise_std = v; }},
      {"noise_common", [&] { scene.noise_common = v; }},
      {"texture_amplitude", [&] { scene.texture_amplitude = v; }},
      {"trend_amplitude", [&] { scene.trend_amplitude = v; }},
      {"trend_hz", [&] { scene.trend_hz = v; }},
      {"face_cx", [&] { scene.face.cx = v; }},
      {"face_cy", [&] { scene.face.cy = v; }},
      {"face_rx", [&] { scene.face.rx = v; }},
      {"face_ry", [&] { scene.face.ry = v; }},
  };
  const auto it = table.find(key);
  if (it == table.end()) throw UsageError("unknown setting: " + key);
  it->second();
}

void cmd_synth(const SynthArgs& a, std::uint64_t seed) {
  for (const auto* p : {&a.video, &a.mask, &a.truth, &a.ipi, &a.trace}) require_output(*p);
  synth::PulseModel model;
  synth::SceneConfig scene;
  model.seed = seed;
  for (const auto& s : a.sets) apply_setting(model, scene, s);

  const auto out = synth::gen_frames(model, scene);
  io::write_frv1(a.video, out.frames);
  io::write_msk1(a.mask, out.mask);
  io::write_atomic(a.truth, io::format_signal_csv(out.truth));
  io::write_atomic(a.ipi, io::format_column_csv("seconds", out.truth_ipi.intervals));
  if (!a.trace.empty()) io::write_atomic(a.trace, io::format_trace_csv(out.trace));
}

// extract -------------------------------------------------------------------

struct ExtractArgs {
  std::string video;
  std::string mask;
  std::string method = "chrom";
  std::string out;
  std::string report;
};

void cmd_extract(const ExtractArgs& a) {
  const Method method = method_from(a.method);
  require_input(a.video);
  require_input(a.mask);
  require_output(a.out);
  require_output(a.report);
  const auto frames = io::read_frv1(a.video);
  const auto mask = io::read_msk1(a.mask);
  const auto pulse = extract_pulse(frames, mask, method);
  io::write_atomic(a.out, io::format_signal_csv(pulse));
  if (a.report.empty()) return;

  json j;
  j["schema"] = 1;
  j["method"] = to_string(method);
  j["frames"] = frames.size();
  j["fps"] = frames.fps();
  try {
    const auto ipi = analyze_ipi(pulse);
    j["peaks"] = ipi.peaks.size();
    j["heart_rate_bpm"] = ipi.heart_rate_bpm;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoPeaks) throw;
    j["peaks"] = 0;
    j["heart_rate_bpm"] = nullptr;
  }
  write_json(a.report, j);
}

// ipi -----------------------------------------------------------------------

struct IpiArgs {
  std::string signal;
  double fps = 0.0;
  std::string out_ipi;
  std::string out_peaks;
  std::string out_gray;
  std::string out_trend;
  std::string report;
};

std::vector<std::string> gray_lines(const IpiSequence& ipi) {
  std::vector<std::string> lines;
  for (auto& w : gray_words(ipi)) lines.push_back(std::move(w.bits));
  return lines;
}

void cmd_ipi(const IpiArgs& a) {
  require_input(a.signal);
  for (const auto* p : {&a.out_ipi, &a.out_peaks, &a.out_gray, &a.out_trend, &a.report}) require_output(*p);
  auto pulse = io::parse_signal_csv(io::read_file(a.signal));
  if (a.fps > 0.0) pulse.sample_rate = a.fps;
  const auto r = analyze_ipi(pulse);

  io::write_atomic(a.out_ipi, io::format_column_csv("seconds", r.ipi.intervals));
  if (!a.out_peaks.empty()) {
    const std::vector<double> idx(r.peaks.indices.begin(), r.peaks.indices.end());
    io::write_atomic(a.out_peaks, io::format_column_csv("index", idx));
  }
  if (!a.out_gray.empty()) io::write_atomic(a.out_gray, io::format_lines(gray_lines(r.ipi)));
  if (!a.out_trend.empty()) io::write_atomic(a.out_trend, io::format_lines({trend_code(r.ipi).to_string()}));
  if (!a.report.empty()) {
    json j;
    j["schema"] = 1;
    j["sample_rate"] = pulse.sample_rate;
    j["peaks"] = r.peaks.size();
    j["intervals"] = r.ipi.size();
    j["heart_rate_bpm"] = r.heart_rate_bpm;
    write_json(a.report, j);
  }
}

// quantize ------------------------------------------------------------------

struct QuantizeArgs {
  std::string ipi;
  std::string codec = "gray";
  std::string out;
};

void cmd_quantize(const QuantizeArgs& a) {
  if (a.codec != "gray" && a.codec != "trend") throw UsageError("unknown codec: " + a.codec);
  require_input(a.ipi);
  require_output(a.out);
  const IpiSequence ipi{io::parse_column_csv(io::read_file(a.ipi))};
  if (ipi.empty()) throw Error(ErrorCode::EmptySequence, "no intervals in " + a.ipi);
  if (a.codec == "gray") {
    io::write_atomic(a.out, io::format_lines(gray_lines(ipi)));
  } else {
    io::write_atomic(a.out, io::format_lines({trend_code(ipi).to_string()}));
  }
}

// enroll --------------------------------------------------------------------

struct EnrollArgs {
  std::string ppg;
  std::vector<std::string> impostors;
  std::string user_id = "user";
  std::string distance = "correlation";
  std::string out;
};

json template_json(const UserTemplate& t) {
  json j;
  j["schema"] = 1;
  j["user_id"] = t.user_id;
  j["template"] = t.waveform;
  j["threshold"] = t.threshold;
  j["distance"] = to_string(t.distance);
  return j;
}

UserTemplate template_from_json(const std::string& path) {
  require_input(path);
  json j;
  try {
    j = json::parse(io::read_file(path));
    UserTemplate t;
    t.user_id = j.at("user_id").get<std::string>();
    t.waveform = j.at("template").get<std::vector<double>>();
    t.threshold = j.at("threshold").get<double>();
    if (j.contains("distance")) {
      const auto d = parse_distance(j.at("distance").get<std::string>());
      if (!d) throw Error(ErrorCode::Format, "unknown distance in " + path);
      t.distance = *d;
    }
    const bool in_range = std::all_of(t.waveform.begin(), t.waveform.end(),
                                      [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; });
    if (t.waveform.size() != kCycleLength || !in_range || !(t.threshold > 0.0))
      throw Error(ErrorCode::Format, "template needs 60 values in [0,1] and a positive threshold");
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Format, path + ": " + e.what());
  }
}

void cmd_enroll(const EnrollArgs& a) {
  const auto kind = parse_distance(a.distance);
  if (!kind) throw UsageError("unknown distance: " + a.distance);
  require_input(a.ppg);
  for (const auto& p : a.impostors) require_input(p);
  require_output(a.out);
  const auto own = ppg_cycles(a.ppg);
  CycleSet others;
  for (const auto& p : a.impostors) {
    auto c = ppg_cycles(p);
    others.cycles.insert(others.cycles.end(), c.cycles.begin(), c.cycles.end());
  }
  write_json(a.out, template_json(enroll(own, others, a.user_id, *kind)));
}

// attack --------------------------------------------------------------------

struct AttackArgs {
  std::string video;
  std::string mask;
  std::string templ;
  std::string method = "chrom";
  std::string out;
};

json spoof_json(const SpoofReport& r, Method method) {
  json j;
  j["method"] = to_string(method);
  j["mae"] = nullptr;
  j["rmse"] = nullptr;
  j["pc"] = nullptr;
  j["bhr"] = nullptr;
  j["eer"] = nullptr;
  j["far_at_threshold"] = r.success_rate;
  j["n"] = r.attempts;
  j["attack_kind"] = to_string(r.kind);
  j["accepted"] = r.accepted;
  return j;
}

void cmd_attack(const AttackArgs& a) {
  const Method method = method_from(a.method);
  require_input(a.video);
  require_input(a.mask);
  require_output(a.out);
  const auto user = template_from_json(a.templ);
  const auto frames = io::read_frv1(a.video);
  const auto mask = io::read_msk1(a.mask);
  const auto pulse = extract_pulse(frames, mask, method);
  const auto cycles = segment_cycles(pulse, detect_peaks(pulse));

  json j;
  j["schema"] = 1;
  j["user_id"] = user.user_id;
  j["threshold"] = user.threshold;
  j["cycles"] = cycles.size();
  j["reports"] = json::array({spoof_json(spoof_eval(user, cycles, AttackKind::VictimRppg), method),
                              spoof_json(spoof_eval(user, cycles, AttackKind::MeanRppg), method)});
  write_json(a.out, j);
}

// defend --------------------------------------------------------------------

struct DefendArgs {
  std::string video;
  std::string mask;
  std::string out;
  std::string wave = "sine";
  double freq = sigh::kDefaultFrequencyHz;
  double amplitude = sigh::kDefaultAmplitude;
  std::string custom;
  std::vector<double> weights = [] {
    const auto w = sigh::InjectionConfig{}.channel_weights;
    return std::vector<double>(w.begin(), w.end());
  }();
  std::string truth;
  std::string report;
};

void cmd_defend(const DefendArgs& a) {
  if (a.wave != "sine" && a.wave != "custom") throw UsageError("unknown waveform: " + a.wave);
  if (a.wave == "custom" && a.custom.empty()) throw UsageError("--wave custom needs --custom");
  if (a.weights.size() != 3) throw UsageError("--weights takes three values r,g,b");
  require_input(a.video);
  require_input(a.mask);
  if (a.wave == "custom") require_input(a.custom);
  if (!a.truth.empty()) require_input(a.truth);
  require_output(a.out);
  require_output(a.report);

  const auto frames = io::read_frv1(a.video);
  const auto mask = io::read_msk1(a.mask);
  std::vector<double> wave;
  if (a.wave == "sine") {
    wave = sigh::sine_waveform(a.freq, frames.fps(), frames.size(), a.amplitude);
  } else {
    wave = sigh::custom_waveform(io::parse_signal_csv(io::read_file(a.custom)).values, frames.size(), a.amplitude);
  }
  sigh::InjectionConfig cfg;
  std::copy(a.weights.begin(), a.weights.end(), cfg.channel_weights.begin());
  const auto guarded = sigh::inject(frames, mask, wave, cfg);

  json verification = nullptr;
  if (!a.truth.empty()) {
    const auto truth = io::parse_signal_csv(io::read_file(a.truth));
    const auto h = sigh::verify_hiding(frames, guarded, mask, truth, wave);
    verification = json::object();
    verification["original_vs_truth"] = h.original_vs_truth;
    verification["original_vs_wave"] = h.original_vs_wave;
    verification["protected_vs_truth"] = h.protected_vs_truth;
    verification["protected_vs_wave"] = h.protected_vs_wave;
    verification["hidden"] = h.hidden;
  }

  io::write_frv1(a.out, guarded);
  if (!a.report.empty()) {
    json j;
    j["schema"] = 1;
    j["wave"] = a.wave;
    j["frequency_hz"] = a.wave == "sine" ? json(a.freq) : json(nullptr);
    j["amplitude"] = a.amplitude;
    j["channel_weights"] = a.weights;
    j["frames"] = frames.size();
    j["verification"] = verification;
    write_json(a.report, j);
  }
}

// metrics -------------------------------------------------------------------

struct MetricsArgs {
  std::string ref;
  std::string cand;
  std::string kind = "signal";
  std::string method;
  double fps = 0.0;
  std::string out;
};

void fill_series(MetricsReport& m, const PairedSeries& p, bool with_bits) {
  m.n = p.size();
  if (p.size() == 0) throw Error(ErrorCode::EmptySeries, "nothing to compare");
  m.mae = mae(p);
  m.rmse = rmse(p);
  m.pc = pearson_or_null(p);
  if (with_bits) m.bhr = bhr(gray_bits({p.reference}), gray_bits({p.candidate}));
}

PeakList peaks_from(const std::string& path, double fps) {
  PeakList peaks{{}, fps};
  for (double v : io::parse_column_csv(io::read_file(path))) {
    if (v < 0.0 || v != std::floor(v)) throw Error(ErrorCode::Format, path + ": peak indices must be whole numbers");
    peaks.indices.push_back(static_cast<std::size_t>(v));
  }
  return peaks;
}

std::string joined_lines(const std::string& path) {
  std::string out;
  for (const auto& l : io::parse_lines(io::read_file(path))) out += l;
  return out;
}

void cmd_metrics(const MetricsArgs& a) {
  static const std::vector<std::string> kinds = {"signal", "ipi", "peaks", "bits", "scores"};
  if (std::find(kinds.begin(), kinds.end(), a.kind) == kinds.end()) throw UsageError("unknown kind: " + a.kind);
  if (a.kind == "peaks" && !(a.fps > 0.0)) throw UsageError("--kind peaks needs --fps");
  require_input(a.ref);
  require_input(a.cand);
  require_output(a.out);

  MetricsReport m;
  m.method = a.method;
  if (a.kind == "signal") {
    const auto r = io::parse_signal_csv(io::read_file(a.ref));
    const auto c = io::parse_signal_csv(io::read_file(a.cand));
    fill_series(m, PairedSeries::truncated(r.values, c.values), false);
  } else if (a.kind == "ipi") {
    fill_series(m,
                PairedSeries::truncated(io::parse_column_csv(io::read_file(a.ref)),
                                        io::parse_column_csv(io::read_file(a.cand))),
                true);
  } else if (a.kind == "peaks") {
    fill_series(m, align_by_first_peak(peaks_from(a.ref, a.fps), peaks_from(a.cand, a.fps)), true);
  } else if (a.kind == "bits") {
    const auto r = joined_lines(a.ref);
    const auto c = joined_lines(a.cand);
    m.bhr = bhr(r, c);
    m.n = std::min(r.size(), c.size());
  } else {
    const ScoreSet s{io::parse_column_csv(io::read_file(a.ref)), io::parse_column_csv(io::read_file(a.cand))};
    const auto e = far_frr_eer(s);
    m.eer = e.eer;
    for (const auto& p : e.roc) {
      if (p.threshold == e.threshold) m.far_at_threshold = p.far;
    }
    m.n = s.genuine.size() + s.impostor.size();
  }

  json j;
  j["schema"] = 1;
  j["kind"] = a.kind;
  j["method"] = m.method;
  j["mae"] = optional_number(m.mae);
  j["rmse"] = optional_number(m.rmse);
  j["pc"] = optional_number(m.pc);
  j["bhr"] = optional_number(m.bhr);
  j["eer"] = optional_number(m.eer);
  j["far_at_threshold"] = optional_number(m.far_at_threshold);
  j["n"] = m.n;
  write_json(a.out, j);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Remote-PPG extraction, spoofing experiments and the SigH video defense.", "rppg"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 42;
  app.add_option("--seed", seed, "Seed for every random draw")->capture_default_str();

  SynthArgs synth_a;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic face video with a known pulse");
  synth->add_option("--out-video", synth_a.video, "FRV1 video")->required();
  synth->add_option("--out-mask", synth_a.mask, "MSK1 skin mask")->required();
  synth->add_option("--out-truth", synth_a.truth, "Truth pulse, t,value CSV")->required();
  synth->add_option("--out-ipi", synth_a.ipi, "Truth inter-beat intervals, seconds CSV")->required();
  synth->add_option("--out-trace", synth_a.trace, "Analytic ROI mean, frame,r,g,b CSV");
  synth->add_option("--set", synth_a.sets,
                    "key=value; keys: bpm systolic_width dicrotic_width dicrotic_amplitude dicrotic_delay "
                    "hrv_jitter width height fps duration strength_r strength_g strength_b noise_std "
                    "noise_common texture_amplitude trend_amplitude trend_hz face_cx face_cy face_rx face_ry");

  ExtractArgs extract_a;
  auto* extract = app.add_subcommand("extract", "Recover the pulse signal from a video");
  extract->add_option("--video", extract_a.video, "FRV1 video")->required();
  extract->add_option("--mask", extract_a.mask, "MSK1 skin mask")->required();
  extract->add_option("--method", extract_a.method, "chrom, pos, lgi or pca")->capture_default_str();
  extract->add_option("--out", extract_a.out, "Pulse, t,value CSV")->required();
  extract->add_option("--report", extract_a.report, "JSON with the estimated heart rate");

  IpiArgs ipi_a;
  auto* ipi = app.add_subcommand("ipi", "Peaks, inter-pulse intervals and both bit codes of a pulse");
  ipi->add_option("--signal", ipi_a.signal, "Pulse, t,value CSV")->required();
  ipi->add_option("--fps", ipi_a.fps, "Override the sample rate implied by the t column");
  ipi->add_option("--out-ipi", ipi_a.out_ipi, "Intervals, seconds CSV")->required();
  ipi->add_option("--out-peaks", ipi_a.out_peaks, "Peak sample indices, index CSV");
  ipi->add_option("--out-gray", ipi_a.out_gray, "Gray codewords, one per line");
  ipi->add_option("--out-trend", ipi_a.out_trend, "Trend code, one line");
  ipi->add_option("--report", ipi_a.report, "JSON summary");

  QuantizeArgs quantize_a;
  auto* quantize = app.add_subcommand("quantize", "Encode an interval sequence as bits");
  quantize->add_option("--ipi", quantize_a.ipi, "Intervals, seconds CSV")->required();
  quantize->add_option("--codec", quantize_a.codec, "gray or trend")->capture_default_str();
  quantize->add_option("--out", quantize_a.out, "Bitstring file")->required();

  EnrollArgs enroll_a;
  auto* enroll_cmd = app.add_subcommand("enroll", "Build a user template from contact-PPG recordings");
  enroll_cmd->add_option("--ppg", enroll_a.ppg, "The user's PPG, t,value CSV")->required();
  enroll_cmd->add_option("--impostor", enroll_a.impostors, "Another user's PPG; repeat for more")->required();
  enroll_cmd->add_option("--user-id", enroll_a.user_id, "Identifier stored in the template")->capture_default_str();
  enroll_cmd->add_option("--distance", enroll_a.distance, "correlation or euclidean")->capture_default_str();
  enroll_cmd->add_option("--out", enroll_a.out, "Template JSON")->required();

  AttackArgs attack_a;
  auto* attack_cmd = app.add_subcommand("attack", "Spoof a template with rPPG cycles from a video");
  attack_cmd->add_option("--video", attack_a.video, "FRV1 video of the victim")->required();
  attack_cmd->add_option("--mask", attack_a.mask, "MSK1 skin mask")->required();
  attack_cmd->add_option("--template", attack_a.templ, "Template JSON")->required();
  attack_cmd->add_option("--method", attack_a.method, "chrom, pos, lgi or pca")->capture_default_str();
  attack_cmd->add_option("--out", attack_a.out, "Spoof report JSON")->required();

  DefendArgs defend_a;
  auto* defend = app.add_subcommand("defend", "Hide the facial pulse by injecting a decoy waveform");
  defend->add_option("--video", defend_a.video, "FRV1 video")->required();
  defend->add_option("--mask", defend_a.mask, "MSK1 skin mask")->required();
  defend->add_option("--out", defend_a.out, "Protected FRV1 video")->required();
  defend->add_option("--wave", defend_a.wave, "sine or custom")->capture_default_str();
  defend->add_option("--freq", defend_a.freq, "Sine frequency in Hz, 0.65-4.0")->capture_default_str();
  defend->add_option("--amplitude,--amp", defend_a.amplitude, "Peak injected intensity")->capture_default_str();
  defend->add_option("--custom", defend_a.custom, "Custom waveform, t,value CSV");
  defend->add_option("--weights", defend_a.weights, "Per-channel gains r,g,b")->delimiter(',')->capture_default_str();
  defend->add_option("--truth", defend_a.truth, "Truth pulse CSV; enables the hiding check");
  defend->add_option("--report", defend_a.report, "Injection and hiding report JSON");

  MetricsArgs metrics_a;
  auto* metrics = app.add_subcommand("metrics", "Compare a candidate against a reference");
  metrics->add_option("--ref", metrics_a.ref, "Reference file")->required();
  metrics->add_option("--cand", metrics_a.cand, "Candidate file")->required();
  metrics->add_option("--kind", metrics_a.kind,
                      "signal (t,value CSVs), ipi (seconds CSVs), peaks (index CSVs, needs --fps), "
                      "bits (bitstring files) or scores (genuine vs impostor distance CSVs)")
      ->capture_default_str();
  metrics->add_option("--method", metrics_a.method, "Label stored in the report");
  metrics->add_option("--fps", metrics_a.fps, "Sample rate of peak indices");
  metrics->add_option("--out", metrics_a.out, "Metrics JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (synth->parsed()) cmd_synth(synth_a, seed);
    if (extract->parsed()) cmd_extract(extract_a);
    if (ipi->parsed()) cmd_ipi(ipi_a);
    if (quantize->parsed()) cmd_quantize(quantize_a);
    if (enroll_cmd->parsed()) cmd_enroll(enroll_a);
    if (attack_cmd->parsed()) cmd_attack(attack_a);
    if (defend->parsed()) cmd_defend(defend_a);
    if (metrics->parsed()) cmd_metrics(metrics_a);
  } catch (const UsageError& e) {
    std::cerr << "rppg: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "rppg: " << e.what() << "\n";
    return is_io_error(e.code()) ? kIoError : kDomainError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "rppg: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

}  // namespace rppg::cli
