#include "rppg/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rppg/error.hpp"
#include "rppg/pipeline.hpp"

namespace rppg {

namespace {

CycleSet cycles_of(const PulseSignal& pulse) {
  return segment_cycles(pulse, detect_peaks(pulse));
}

// An attack that yields no usable cycles is an attack that never gets a
// sample in front of the authenticator.
SpoofReport attack(const UserTemplate& user, const PulseSignal& pulse, AttackKind kind) {
  try {
    return spoof_eval(user, cycles_of(pulse), kind);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoPeaks && e.code() != ErrorCode::SignalTooShort &&
        e.code() != ErrorCode::EmptyCycleSet)
      throw;
    SpoofReport r;
    r.kind = kind;
    return r;
  }
}

// A pulse with too few peaks to code gives the attacker nothing; scored as
// a coin flip.
double bits_hit(const PeakList& truth_peaks, const PulseSignal& pulse) {
  try {
    return gray_bhr(truth_peaks, detect_peaks(pulse));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoPeaks && e.code() != ErrorCode::SignalTooShort) throw;
    return 0.5;
  }
}

}  // namespace

std::vector<synth::PulseModel> sample_users(std::size_t n, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 7u};
  std::mt19937_64 rng(seq);
  auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  std::vector<synth::PulseModel> users(n);
  for (auto& m : users) {
    m.heart_rate_bpm = u(55.0, 80.0);
    m.systolic_width = u(0.07, 0.14);
    m.dicrotic_width = u(0.10, 0.20);
    m.dicrotic_amplitude = u(0.15, 0.65);
    m.dicrotic_delay = u(0.22, 0.40);
    m.hrv_jitter = 0.03;
    m.seed = rng();
  }
  return users;
}

double CorpusOutcome::mean_rate(SpoofReport UserOutcome::*field) const {
  if (users.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& u : users) acc += (u.*field).success_rate;
  return acc / static_cast<double>(users.size());
}

double CorpusOutcome::mean_of(double UserOutcome::*field) const {
  if (users.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& u : users) acc += u.*field;
  return acc / static_cast<double>(users.size());
}

CorpusOutcome run_corpus(const CorpusConfig& config, std::uint64_t seed) {
  if (config.users < 2) throw Error(ErrorCode::InvalidArgument, "corpus needs at least 2 users");
  if (!(config.impostor_fraction > 0.0 && config.impostor_fraction < 1.0))
    throw Error(ErrorCode::InvalidArgument, "impostor fraction must lie in (0,1)");
  const auto models = sample_users(config.users, seed);
  const double fps = config.scene.fps;

  std::vector<CycleSet> ppg_cycles;
  ppg_cycles.reserve(models.size());
  for (const auto& m : models) {
    ppg_cycles.push_back(cycles_of(reference_pulse(synth::gen_pulse(m, fps, config.enroll_duration_s).pulse)));
  }

  CorpusOutcome out;
  for (std::size_t i = 0; i < models.size(); ++i) {
    CycleSet train;
    CycleSet random_attack;
    for (std::size_t j = 0; j < models.size(); ++j) {
      if (j == i) continue;
      const auto& c = ppg_cycles[j].cycles;
      const auto k = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::ceil(config.impostor_fraction * static_cast<double>(c.size()))));
      train.cycles.insert(train.cycles.end(), c.begin(), c.begin() + static_cast<std::ptrdiff_t>(std::min(k, c.size())));
      random_attack.cycles.insert(random_attack.cycles.end(), c.begin() + static_cast<std::ptrdiff_t>(std::min(k, c.size())),
                                  c.end());
    }

    UserOutcome u;
    u.user_id = "user" + std::to_string(i);
    const auto enrolled = enroll_detailed(ppg_cycles[i], train, u.user_id, config.distance);
    u.eer = enrolled.eer.eer;
    u.threshold = enrolled.user.threshold;
    u.random = spoof_eval(enrolled.user, random_attack, AttackKind::Random);

    auto victim_model = models[i];
    victim_model.seed = models[i].seed ^ 0x9e3779b97f4a7c15ULL;
    const auto scene = synth::gen_frames(victim_model, config.scene);
    const auto rppg = extract_pulse(scene.frames, scene.mask, config.method);
    u.victim = attack(enrolled.user, rppg, AttackKind::VictimRppg);
    u.mean = attack(enrolled.user, rppg, AttackKind::MeanRppg);
    const auto truth_peaks = detect_peaks(reference_pulse(scene.truth));
    u.bhr = bits_hit(truth_peaks, rppg);

    if (config.with_defense) {
      const auto wave = sigh::sine_waveform(config.decoy_hz, fps, scene.frames.size(), config.decoy_amplitude);
      const auto guarded = sigh::inject(scene.frames, scene.mask, wave, config.injection);
      const auto guarded_rppg = extract_pulse(guarded, scene.mask, config.method);
      u.protected_victim = attack(enrolled.user, guarded_rppg, AttackKind::VictimRppg);
      u.protected_mean = attack(enrolled.user, guarded_rppg, AttackKind::MeanRppg);
      u.protected_bhr = bits_hit(truth_peaks, guarded_rppg);
      u.hiding = sigh::verify_hiding(scene.frames, guarded, scene.mask, scene.truth, wave);
    }
    out.users.push_back(std::move(u));
  }
  return out;
}

}  // namespace rppg
