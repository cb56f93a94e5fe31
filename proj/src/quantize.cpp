#include "rppg/quantize.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "rppg/error.hpp"

namespace rppg {

int QuantileBinning::bin_of(double value) const {
  return static_cast<int>(std::upper_bound(edges.begin(), edges.end(), value) - edges.begin());
}

std::string TrendCode::to_string() const {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

NormalizedIpi normalize_ipi(const IpiSequence& ipi) {
  if (ipi.empty()) throw Error(ErrorCode::EmptySequence, "cannot normalize an empty IPI sequence");
  return {normalize01(std::span<const double>(ipi.intervals))};
}

std::uint8_t to_gray(std::uint8_t value) { return static_cast<std::uint8_t>(value ^ (value >> 1)); }

std::uint8_t from_gray(std::uint8_t gray) {
  std::uint8_t value = gray;
  for (std::uint8_t shift = gray >> 1; shift != 0; shift >>= 1) value ^= shift;
  return value;
}

GrayCodeWord gray_encode(double normalized) {
  if (!(normalized >= 0.0 && normalized <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "Gray encoding expects values in [0,1]");
  // 1.0 * 256 does not fit in 8 bits; clamp to 255.
  const auto scaled = static_cast<std::uint8_t>(std::min(std::floor(normalized * 256.0), 255.0));
  GrayCodeWord w;
  w.scaled = scaled;
  const auto g = to_gray(scaled);
  w.bits.resize(8);
  for (int i = 0; i < 8; ++i) w.bits[static_cast<std::size_t>(i)] = ((g >> (7 - i)) & 1) ? '1' : '0';
  return w;
}

std::vector<GrayCodeWord> gray_encode(const NormalizedIpi& ipi_s) {
  std::vector<GrayCodeWord> out;
  out.reserve(ipi_s.values.size());
  for (double v : ipi_s.values) out.push_back(gray_encode(v));
  return out;
}

int decode_check(std::string_view bits) {
  if (bits.size() != 8) throw Error(ErrorCode::MalformedBits, "Gray word must be 8 bits");
  std::uint8_t g = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw Error(ErrorCode::MalformedBits, "Gray word has a non-binary character");
    g = static_cast<std::uint8_t>((g << 1) | (c == '1'));
  }
  return from_gray(g);
}

QuantileBinning fit_bins(const IpiSequence& ipi) {
  if (ipi.size() < 2) throw Error(ErrorCode::DegenerateSequence, "need at least 2 intervals to fit bins");
  QuantileBinning b;
  b.fitted_mean = mean(ipi.intervals);
  b.fitted_std = pstdev(ipi.intervals);
  if (!(b.fitted_std > 0.0)) throw Error(ErrorCode::DegenerateSequence, "intervals have zero variance");
  const boost::math::normal_distribution<double> dist(b.fitted_mean, b.fitted_std);
  for (int k = 1; k < kQuantileBins; ++k) {
    b.edges[static_cast<std::size_t>(k - 1)] = boost::math::quantile(dist, static_cast<double>(k) / kQuantileBins);
  }
  return b;
}

TrendCode trend_encode_bins(const std::vector<int>& bins) {
  TrendCode code;
  code.bits.reserve(bins.size() + 1);
  code.bits.push_back(0);
  if (bins.empty()) return code;
  int previous = bins.front();
  for (int b : bins) {
    code.bits.push_back(b > previous ? 1 : 0);
    previous = b;
  }
  return code;
}

TrendCode trend_encode(const IpiSequence& ipi, const QuantileBinning& bins) {
  if (ipi.empty()) throw Error(ErrorCode::EmptySequence, "trend encoding of an empty IPI sequence");
  std::vector<int> idx;
  idx.reserve(ipi.size());
  for (double v : ipi.intervals) idx.push_back(bins.bin_of(v));
  return trend_encode_bins(idx);
}

std::string concat_bits(const std::vector<GrayCodeWord>& words) {
  std::string out;
  out.reserve(words.size() * 8);
  for (const auto& w : words) out += w.bits;
  return out;
}

}  // namespace rppg
