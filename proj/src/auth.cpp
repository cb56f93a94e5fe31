#include "rppg/auth.hpp"

#include <algorithm>
#include <cmath>

#include "rppg/error.hpp"

namespace rppg {

std::string_view to_string(DistanceKind k) {
  return k == DistanceKind::Euclidean ? "euclidean" : "correlation";
}

std::optional<DistanceKind> parse_distance(std::string_view name) {
  if (name == "correlation") return DistanceKind::Correlation;
  if (name == "euclidean") return DistanceKind::Euclidean;
  return std::nullopt;
}

std::string_view to_string(AttackKind k) {
  switch (k) {
    case AttackKind::Random: return "random";
    case AttackKind::VictimRppg: return "victim_rppg";
    case AttackKind::MeanRppg: return "mean_rppg";
  }
  return "random";
}

double cycle_distance(std::span<const double> a, std::span<const double> b, DistanceKind kind) {
  if (a.size() != b.size()) throw Error(ErrorCode::BadCycle, "cycle lengths differ");
  if (kind == DistanceKind::Euclidean) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc / static_cast<double>(a.size()));
  }
  try {
    return 1.0 - pearson(a, b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroVariance) return 1.0;
    throw;
  }
}

std::vector<double> mean_cycle(const CycleSet& cycles) {
  if (cycles.empty()) throw Error(ErrorCode::EmptyCycleSet, "mean of an empty cycle set");
  const auto len = cycles.cycle_len();
  std::vector<double> acc(len, 0.0);
  for (const auto& c : cycles.cycles) {
    if (c.size() != len) throw Error(ErrorCode::BadCycle, "cycles differ in length");
    for (std::size_t i = 0; i < len; ++i) acc[i] += c[i];
  }
  for (double& v : acc) v /= static_cast<double>(cycles.size());
  return normalize01(std::span<const double>(acc));
}

Enrollment enroll_detailed(const CycleSet& cycles, const CycleSet& impostor_cycles, std::string user_id,
                           DistanceKind kind) {
  if (cycles.size() < kMinEnrollCycles) throw Error(ErrorCode::TooFewCycles, "need at least 5 enrollment cycles");
  if (impostor_cycles.size() < kMinEnrollCycles)
    throw Error(ErrorCode::TooFewCycles, "need at least 5 impostor cycles");

  Enrollment out;
  out.user.user_id = std::move(user_id);
  out.user.distance = kind;
  out.user.waveform = mean_cycle(cycles);

  for (std::size_t i = 0; i < cycles.size(); ++i) {
    CycleSet rest;
    rest.cycles.reserve(cycles.size() - 1);
    for (std::size_t j = 0; j < cycles.size(); ++j) {
      if (j != i) rest.cycles.push_back(cycles.cycles[j]);
    }
    out.scores.genuine.push_back(cycle_distance(cycles.cycles[i], mean_cycle(rest), kind));
  }
  for (const auto& c : impostor_cycles.cycles) {
    out.scores.impostor.push_back(cycle_distance(c, out.user.waveform, kind));
  }
  out.eer = far_frr_eer(out.scores);
  out.user.threshold = std::max(out.eer.threshold, 1e-12);
  return out;
}

UserTemplate enroll(const CycleSet& cycles, const CycleSet& impostor_cycles, std::string user_id,
                    DistanceKind kind) {
  return enroll_detailed(cycles, impostor_cycles, std::move(user_id), kind).user;
}

AuthResult authenticate(std::span<const double> cycle, const UserTemplate& user) {
  if (cycle.size() != user.waveform.size()) throw Error(ErrorCode::BadCycle, "cycle length differs from template");
  for (double v : cycle) {
    if (!std::isfinite(v) || v < -1e-9 || v > 1.0 + 1e-9) throw Error(ErrorCode::BadCycle, "cycle values outside [0,1]");
  }
  AuthResult r;
  r.distance = cycle_distance(cycle, user.waveform, user.distance);
  r.accept = r.distance <= user.threshold;
  return r;
}

SpoofReport spoof_eval(const UserTemplate& user, const CycleSet& attack_cycles, AttackKind kind) {
  if (attack_cycles.empty()) throw Error(ErrorCode::EmptyCycleSet, "no attack cycles");
  SpoofReport report;
  report.kind = kind;
  auto count = [&](std::span<const double> c) {
    ++report.attempts;
    if (authenticate(c, user).accept) ++report.accepted;
  };
  if (kind == AttackKind::MeanRppg) {
    count(mean_cycle(attack_cycles));
  } else {
    for (const auto& c : attack_cycles.cycles) count(c);
  }
  report.success_rate = static_cast<double>(report.accepted) / static_cast<double>(report.attempts);
  return report;
}

}  // namespace rppg
