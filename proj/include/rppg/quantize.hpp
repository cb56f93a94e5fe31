#pragma once

// IPI-to-bits codecs: 8-bit Gray code over min-max normalized intervals, and
// the trend code over normal-quantile bins.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rppg/pulse.hpp"

namespace rppg {

inline constexpr int kQuantileBins = 16;

struct NormalizedIpi {
  std::vector<double> values;  // in [0,1]
};

struct GrayCodeWord {
  std::uint8_t scaled = 0;  // min(floor(256 v), 255)
  std::string bits;         // 8 characters, MSB first
};

struct QuantileBinning {
  std::array<double, kQuantileBins - 1> edges{};  // strictly increasing
  double fitted_mean = 0.0;
  double fitted_std = 0.0;

  // 0..15: the number of edges at or below `value`.
  int bin_of(double value) const;
};

struct TrendCode {
  std::vector<std::uint8_t> bits;  // bits[0] == 0
  std::string to_string() const;
};

NormalizedIpi normalize_ipi(const IpiSequence& ipi);

std::uint8_t to_gray(std::uint8_t value);
std::uint8_t from_gray(std::uint8_t gray);

GrayCodeWord gray_encode(double normalized);
std::vector<GrayCodeWord> gray_encode(const NormalizedIpi& ipi_s);

// Inverse Gray transform of an 8-character bit string.
int decode_check(std::string_view bits);
inline int decode_check(const GrayCodeWord& word) { return decode_check(word.bits); }

QuantileBinning fit_bins(const IpiSequence& ipi);

TrendCode trend_encode_bins(const std::vector<int>& bins);
TrendCode trend_encode(const IpiSequence& ipi, const QuantileBinning& bins);

// Concatenated bit strings, as compared by the bit hit rate.
std::string concat_bits(const std::vector<GrayCodeWord>& words);

}  // namespace rppg
