#pragma once

// Classical rPPG extractors. Each maps a per-frame RGB trace to a 1-D pulse
// sampled at the trace frame rate. The sign of every output is arbitrary.

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "rppg/signal.hpp"

namespace rppg {

enum class Method { Chrom, Pos, Lgi, Pca };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

struct ChromaProjection {
  std::vector<double> x;  // 3R - 2G
  std::vector<double> y;  // 1.5R + G - 1.5B
  double alpha = 0.0;     // sigma(x) / sigma(y), 0 when sigma(y) vanishes
};

ChromaProjection chroma_projection(const RgbTrace& trace);

// S = X - alpha*Y. Expects a detrended, band-passed trace.
PulseSignal chrom(const RgbTrace& trace);

// Rows of the plane-orthogonal-to-skin projection.
Eigen::Matrix<double, 2, 3> pos_projection();

inline constexpr double kPosWindowSeconds = 1.6;
std::size_t default_pos_window(double fps);

// Sliding-window POS with overlap-add. Expects the raw (positive) trace.
PulseSignal pos(const RgbTrace& trace, std::size_t window_len);

// Channels divided by their temporal mean over the whole trace, as a 3xN
// matrix. Throws DegenerateTrace if a channel mean is zero.
Eigen::Matrix<double, 3, Eigen::Dynamic> temporal_normalize(const RgbTrace& trace);

// I - u u' for the dominant left singular vector u of `data`.
Eigen::Matrix3d lgi_projector(const Eigen::Matrix<double, 3, Eigen::Dynamic>& data);

// Projects the normalized trace off its dominant direction and returns the
// projected channel with the most cardiac-band energy.
PulseSignal lgi(const RgbTrace& trace);

// Eigenvectors of the channel covariance as columns, by descending eigenvalue.
Eigen::Matrix3d principal_axes(const RgbTrace& trace);

// The principal component with the strongest cardiac-band spectral peak,
// sign-normalized so its largest-magnitude sample is positive.
PulseSignal pca_extract(const RgbTrace& trace);

}  // namespace rppg
