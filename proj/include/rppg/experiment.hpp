#pragma once

// Multi-user spoofing experiment on synthetic subjects: enroll each user
// from a contact-PPG session, attack with other users' cycles and with rPPG
// recovered from the user's own video, then repeat on SigH-protected video.

#include <cstdint>
#include <string>
#include <vector>

#include "rppg/auth.hpp"
#include "rppg/extract.hpp"
#include "rppg/sigh.hpp"
#include "rppg/synth.hpp"

namespace rppg {

struct CorpusConfig {
  std::size_t users = 10;
  synth::SceneConfig scene = [] {
    synth::SceneConfig s;
    s.duration_s = 30.0;
    return s;
  }();
  double enroll_duration_s = 60.0;
  // Share of each other user's cycles used as impostor training data; the
  // remainder is the random-attack set.
  double impostor_fraction = 0.1;
  Method method = Method::Chrom;
  DistanceKind distance = DistanceKind::Correlation;
  bool with_defense = true;
  double decoy_hz = sigh::kDefaultFrequencyHz;
  double decoy_amplitude = sigh::kDefaultAmplitude;
  sigh::InjectionConfig injection{};
};

// Users drawn with varied heart rate and beat morphology.
std::vector<synth::PulseModel> sample_users(std::size_t n, std::uint64_t seed);

struct UserOutcome {
  std::string user_id;
  double eer = 0.0;
  double threshold = 0.0;
  SpoofReport random;
  SpoofReport victim;
  SpoofReport mean;
  SpoofReport protected_victim;
  SpoofReport protected_mean;
  sigh::HidingReport hiding;
  // Gray-code bit hit rate of the video IPIs against the true pulse IPIs.
  double bhr = 0.0;
  double protected_bhr = 0.0;
};

struct CorpusOutcome {
  std::vector<UserOutcome> users;

  double mean_rate(SpoofReport UserOutcome::*field) const;
  double mean_of(double UserOutcome::*field) const;
};

CorpusOutcome run_corpus(const CorpusConfig& config, std::uint64_t seed);

}  // namespace rppg
