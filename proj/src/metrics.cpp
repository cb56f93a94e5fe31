#include "rppg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rppg/error.hpp"

namespace rppg {

PairedSeries PairedSeries::truncated(std::vector<double> reference, std::vector<double> candidate) {
  const auto n = std::min(reference.size(), candidate.size());
  reference.resize(n);
  candidate.resize(n);
  return {std::move(reference), std::move(candidate)};
}

namespace {

void require_pair(const PairedSeries& p) {
  if (p.reference.size() != p.candidate.size()) throw Error(ErrorCode::LengthMismatch, "series are not aligned");
  if (p.reference.empty()) throw Error(ErrorCode::EmptySeries, "empty series");
}

}  // namespace

double mae(const PairedSeries& p) {
  require_pair(p);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p.reference[i] - p.candidate[i]);
  return acc / static_cast<double>(p.size());
}

double rmse(const PairedSeries& p) {
  require_pair(p);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p.reference[i] - p.candidate[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(p.size()));
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "series are not aligned");
  if (a.empty()) throw Error(ErrorCode::EmptySeries, "empty series");
  const double ma = mean(a);
  const double mb = mean(b);
  double sab = 0.0;
  double saa = 0.0;
  double sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) throw Error(ErrorCode::ZeroVariance, "series has zero variance");
  // Exact for a series against itself or its mirror image.
  if (saa == sbb && std::abs(sab) == saa) return sab > 0.0 ? 1.0 : -1.0;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double pearson(const PairedSeries& p) {
  require_pair(p);
  return pearson(p.reference, p.candidate);
}

double bhr(std::string_view reference_bits, std::string_view candidate_bits) {
  const auto n = std::min(reference_bits.size(), candidate_bits.size());
  if (n == 0) throw Error(ErrorCode::EmptyBits, "bit hit rate of an empty bit string");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) hits += reference_bits[i] == candidate_bits[i];
  return static_cast<double>(hits) / static_cast<double>(n);
}

EerResult far_frr_eer(const ScoreSet& scores) {
  if (scores.genuine.empty() || scores.impostor.empty())
    throw Error(ErrorCode::EmptyScores, "EER needs genuine and impostor scores");
  auto genuine = scores.genuine;
  auto impostor = scores.impostor;
  std::sort(genuine.begin(), genuine.end());
  std::sort(impostor.begin(), impostor.end());

  std::vector<double> all(genuine);
  all.insert(all.end(), impostor.begin(), impostor.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<double> thresholds;
  thresholds.reserve(all.size() + 1);
  thresholds.push_back(std::nextafter(all.front(), -std::numeric_limits<double>::infinity()));
  for (std::size_t i = 0; i + 1 < all.size(); ++i) thresholds.push_back(0.5 * (all[i] + all[i + 1]));
  thresholds.push_back(all.back());

  const double ng = static_cast<double>(genuine.size());
  const double ni = static_cast<double>(impostor.size());
  EerResult result;
  result.roc.reserve(thresholds.size());
  double best_gap = std::numeric_limits<double>::infinity();
  for (double t : thresholds) {
    const auto accepted_imp = std::upper_bound(impostor.begin(), impostor.end(), t) - impostor.begin();
    const auto accepted_gen = std::upper_bound(genuine.begin(), genuine.end(), t) - genuine.begin();
    const RocPoint pt{t, static_cast<double>(accepted_imp) / ni, (ng - static_cast<double>(accepted_gen)) / ng};
    result.roc.push_back(pt);
    const double gap = std::abs(pt.far - pt.frr);
    if (gap < best_gap) {
      best_gap = gap;
      result.eer = 0.5 * (pt.far + pt.frr);
      result.threshold = t;
    }
  }
  return result;
}

PairedSeries align_by_first_peak(const PeakList& reference, const PeakList& candidate, double tolerance_s) {
  if (reference.size() < 2 || candidate.size() < 2) throw Error(ErrorCode::NoPeaks, "need at least 2 peaks per train");
  std::size_t ri = 0;
  std::size_t ci = 0;
  while (ri < reference.size() && ci < candidate.size()) {
    const double tr = static_cast<double>(reference.indices[ri]) / reference.sample_rate;
    const double tc = static_cast<double>(candidate.indices[ci]) / candidate.sample_rate;
    if (std::abs(tr - tc) <= tolerance_s) break;
    if (tr < tc) {
      ++ri;
    } else {
      ++ci;
    }
  }
  const PeakList ref{{reference.indices.begin() + static_cast<std::ptrdiff_t>(ri), reference.indices.end()},
                     reference.sample_rate};
  const PeakList cand{{candidate.indices.begin() + static_cast<std::ptrdiff_t>(ci), candidate.indices.end()},
                      candidate.sample_rate};
  return PairedSeries::truncated(ipi_from_peaks(ref).intervals, ipi_from_peaks(cand).intervals);
}

}  // namespace rppg
