#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rppg/pulse.hpp"

namespace rppg {

// Two aligned series of equal length.
struct PairedSeries {
  std::vector<double> reference;
  std::vector<double> candidate;

  std::size_t size() const { return reference.size(); }

  // Truncates both to the shorter length.
  static PairedSeries truncated(std::vector<double> reference, std::vector<double> candidate);
};

double mae(const PairedSeries& p);
double rmse(const PairedSeries& p);
double pearson(const PairedSeries& p);
double pearson(std::span<const double> a, std::span<const double> b);

// Fraction of matching positions over the shorter of the two strings.
double bhr(std::string_view reference_bits, std::string_view candidate_bits);

struct ScoreSet {
  std::vector<double> genuine;   // distances of genuine attempts
  std::vector<double> impostor;  // distances of attack attempts
};

struct RocPoint {
  double threshold;
  double far;  // impostors with distance <= threshold
  double frr;  // genuines with distance > threshold
};

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
  std::vector<RocPoint> roc;
};

// Thresholds swept: just below the smallest score, every midpoint between
// consecutive distinct scores, and the largest score. The EER point
// minimizes |FAR - FRR| (lowest threshold on ties); eer = (FAR + FRR) / 2.
EerResult far_frr_eer(const ScoreSet& scores);

// Intervals of two peak trains after anchoring on their first matching
// peak (first peaks within `tolerance_s`), truncated to equal length.
PairedSeries align_by_first_peak(const PeakList& reference, const PeakList& candidate,
                                 double tolerance_s = 0.25);

struct MetricsReport {
  std::string method;
  std::optional<double> mae;
  std::optional<double> rmse;
  std::optional<double> pc;
  std::optional<double> bhr;
  std::optional<double> eer;
  std::optional<double> far_at_threshold;
  std::size_t n = 0;
};

}  // namespace rppg
