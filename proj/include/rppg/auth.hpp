#pragma once

// Template-matching authenticator standing in for a learned PPG
// authentication model, plus the spoof evaluation it is attacked with.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rppg/metrics.hpp"
#include "rppg/pulse.hpp"

namespace rppg {

enum class DistanceKind { Correlation, Euclidean };

std::string_view to_string(DistanceKind k);
std::optional<DistanceKind> parse_distance(std::string_view name);

inline constexpr std::size_t kMinEnrollCycles = 5;

struct UserTemplate {
  std::string user_id;
  std::vector<double> waveform;  // kCycleLength samples in [0,1]
  double threshold = 0.0;        // accept iff distance <= threshold
  DistanceKind distance = DistanceKind::Correlation;
};

enum class AttackKind { Random, VictimRppg, MeanRppg };

std::string_view to_string(AttackKind k);

struct SpoofReport {
  AttackKind kind = AttackKind::Random;
  double success_rate = 0.0;
  std::size_t attempts = 0;
  std::size_t accepted = 0;
};

struct AuthResult {
  bool accept = false;
  double distance = 0.0;
};

// 1 - Pearson (0 for identical shapes, 2 for inverted ones; 1 when either
// side is flat), or the RMS difference.
double cycle_distance(std::span<const double> a, std::span<const double> b,
                      DistanceKind kind = DistanceKind::Correlation);

// Pointwise mean, renormalized to [0,1].
std::vector<double> mean_cycle(const CycleSet& cycles);

struct Enrollment {
  UserTemplate user;
  ScoreSet scores;  // leave-one-out genuine and impostor distances
  EerResult eer;
};

Enrollment enroll_detailed(const CycleSet& cycles, const CycleSet& impostor_cycles, std::string user_id,
                           DistanceKind kind = DistanceKind::Correlation);

UserTemplate enroll(const CycleSet& cycles, const CycleSet& impostor_cycles, std::string user_id,
                    DistanceKind kind = DistanceKind::Correlation);

AuthResult authenticate(std::span<const double> cycle, const UserTemplate& user);

// For MeanRppg the single mean cycle of `attack_cycles` is presented.
SpoofReport spoof_eval(const UserTemplate& user, const CycleSet& attack_cycles, AttackKind kind);

}  // namespace rppg
