#include "rppg/extract.hpp"

#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "rppg/error.hpp"

namespace rppg {

namespace {

constexpr double kTinySigma = 1e-12;

void require_length(const RgbTrace& trace, std::size_t n, const char* what) {
  validate(trace);
  if (trace.size() < n) throw Error(ErrorCode::SignalTooShort, what);
}

// Index of the row with the largest score; ties go to the lowest index.
template <typename Score>
Eigen::Index argmax_row(const Eigen::Matrix<double, 3, Eigen::Dynamic>& rows, Score score) {
  Eigen::Index best = 0;
  double best_score = -1.0;
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    const double s = score(r);
    if (s > best_score) {
      best_score = s;
      best = r;
    }
  }
  return best;
}

std::vector<double> row_vector(const Eigen::Matrix<double, 3, Eigen::Dynamic>& m, Eigen::Index r) {
  std::vector<double> out(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.cols(); ++i) out[static_cast<std::size_t>(i)] = m(r, i);
  return out;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Chrom: return "chrom";
    case Method::Pos: return "pos";
    case Method::Lgi: return "lgi";
    case Method::Pca: return "pca";
  }
  return "chrom";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "chrom") return Method::Chrom;
  if (name == "pos") return Method::Pos;
  if (name == "lgi") return Method::Lgi;
  if (name == "pca") return Method::Pca;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// CHROM

ChromaProjection chroma_projection(const RgbTrace& trace) {
  require_length(trace, 2, "CHROM needs at least 2 samples");
  ChromaProjection p;
  p.x.reserve(trace.size());
  p.y.reserve(trace.size());
  for (const auto& [r, g, b] : trace.samples) {
    p.x.push_back(3.0 * r - 2.0 * g);
    p.y.push_back(1.5 * r + g - 1.5 * b);
  }
  const double sx = pstdev(p.x);
  const double sy = pstdev(p.y);
  if (sy < kTinySigma) {
    if (sx < kTinySigma) throw Error(ErrorCode::DegenerateTrace, "both chrominance axes are flat");
    p.alpha = 0.0;
  } else {
    p.alpha = sx / sy;
  }
  return p;
}

PulseSignal chrom(const RgbTrace& trace) {
  const auto p = chroma_projection(trace);
  PulseSignal s{std::vector<double>(trace.size()), trace.fps};
  for (std::size_t i = 0; i < trace.size(); ++i) s.values[i] = p.x[i] - p.alpha * p.y[i];
  return s;
}

// ---------------------------------------------------------------------------
// POS

Eigen::Matrix<double, 2, 3> pos_projection() {
  Eigen::Matrix<double, 2, 3> p;
  p << 0.0, 1.0, -1.0,
      -2.0, 1.0, 1.0;
  return p;
}

std::size_t default_pos_window(double fps) {
  return static_cast<std::size_t>(std::max(2.0, std::round(kPosWindowSeconds * fps)));
}

PulseSignal pos(const RgbTrace& trace, std::size_t window_len) {
  validate(trace);
  if (window_len < 2) throw Error(ErrorCode::InvalidArgument, "POS window must be at least 2 frames");
  if (window_len > trace.size()) throw Error(ErrorCode::WindowTooLong, "POS window longer than trace");

  const auto proj = pos_projection();
  const std::size_t n = trace.size();
  std::vector<double> out(n, 0.0);
  std::vector<double> x(window_len);
  std::vector<double> y(window_len);
  bool any_window = false;

  for (std::size_t start = 0; start + window_len <= n; ++start) {
    Eigen::Vector3d mu = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < window_len; ++i) {
      const auto& s = trace.samples[start + i];
      mu += Eigen::Vector3d(s[0], s[1], s[2]);
    }
    mu /= static_cast<double>(window_len);
    if ((mu.array().abs() < kTinySigma).any()) continue;
    any_window = true;

    for (std::size_t i = 0; i < window_len; ++i) {
      const auto& s = trace.samples[start + i];
      const Eigen::Vector3d cn = Eigen::Vector3d(s[0], s[1], s[2]).cwiseQuotient(mu);
      const Eigen::Vector2d xy = proj * cn;
      x[i] = xy[0];
      y[i] = xy[1];
    }
    const double sy = pstdev(y);
    const double alpha = sy < kTinySigma ? 0.0 : pstdev(x) / sy;
    double h_mean = 0.0;
    for (std::size_t i = 0; i < window_len; ++i) {
      x[i] += alpha * y[i];
      h_mean += x[i];
    }
    h_mean /= static_cast<double>(window_len);
    for (std::size_t i = 0; i < window_len; ++i) out[start + i] += x[i] - h_mean;
  }
  if (!any_window) throw Error(ErrorCode::DegenerateTrace, "every POS window has a zero channel mean");
  return {std::move(out), trace.fps};
}

// ---------------------------------------------------------------------------
// LGI

Eigen::Matrix<double, 3, Eigen::Dynamic> temporal_normalize(const RgbTrace& trace) {
  validate(trace);
  const auto n = static_cast<Eigen::Index>(trace.size());
  Eigen::Matrix<double, 3, Eigen::Dynamic> m(3, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = trace.samples[static_cast<std::size_t>(i)];
    m.col(i) << s[0], s[1], s[2];
  }
  const Eigen::Vector3d mu = m.rowwise().mean();
  if ((mu.array().abs() < kTinySigma).any())
    throw Error(ErrorCode::DegenerateTrace, "channel with zero temporal mean");
  return mu.cwiseInverse().asDiagonal() * m;
}

Eigen::Matrix3d lgi_projector(const Eigen::Matrix<double, 3, Eigen::Dynamic>& data) {
  // The dominant left singular vector of A is the top eigenvector of A A'.
  const Eigen::Matrix3d gram = data * data.transpose();
  if (gram.trace() <= 1e-300) throw Error(ErrorCode::DegenerateTrace, "trace matrix is numerically zero");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(gram);
  const Eigen::Vector3d u = eig.eigenvectors().col(2);
  return Eigen::Matrix3d::Identity() - u * u.transpose();
}

PulseSignal lgi(const RgbTrace& trace) {
  require_length(trace, 3, "LGI needs at least 3 samples");
  const auto normalized = temporal_normalize(trace);
  const Eigen::Matrix<double, 3, Eigen::Dynamic> projected = lgi_projector(normalized) * normalized;
  const auto best = argmax_row(projected, [&](Eigen::Index r) {
    return band_energy(row_vector(projected, r), trace.fps);
  });
  return {row_vector(projected, best), trace.fps};
}

// ---------------------------------------------------------------------------
// PCA

namespace {

struct Pca {
  Eigen::Matrix<double, 3, Eigen::Dynamic> centered;
  Eigen::Matrix3d axes;
  Eigen::Vector3d variances;
};

Pca principal_components(const RgbTrace& trace) {
  validate(trace);
  if (trace.size() < 2) throw Error(ErrorCode::SignalTooShort, "PCA needs at least 2 samples");
  const auto n = static_cast<Eigen::Index>(trace.size());
  Pca pca;
  pca.centered.resize(3, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = trace.samples[static_cast<std::size_t>(i)];
    pca.centered.col(i) << s[0], s[1], s[2];
  }
  const Eigen::Vector3d mu = pca.centered.rowwise().mean();
  pca.centered.colwise() -= mu;
  const Eigen::Matrix3d cov = pca.centered * pca.centered.transpose() / static_cast<double>(n);
  if (cov.trace() <= 1e-24 * std::max(1.0, mu.squaredNorm()))
    throw Error(ErrorCode::DegenerateTrace, "channel covariance is numerically zero");

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  // Eigen sorts ascending; flip to descending.
  for (int k = 0; k < 3; ++k) {
    pca.axes.col(k) = eig.eigenvectors().col(2 - k);
    pca.variances[k] = eig.eigenvalues()[2 - k];
  }
  return pca;
}

}  // namespace

Eigen::Matrix3d principal_axes(const RgbTrace& trace) { return principal_components(trace).axes; }

PulseSignal pca_extract(const RgbTrace& trace) {
  const auto pca = principal_components(trace);
  const Eigen::Matrix<double, 3, Eigen::Dynamic> comps = pca.axes.transpose() * pca.centered;

  std::array<double, 3> peak{};
  for (int k = 0; k < 3; ++k) peak[k] = band_peak_power(row_vector(comps, k), trace.fps);
  Eigen::Index best = 0;
  if (peak[0] == 0.0 && peak[1] == 0.0 && peak[2] == 0.0) {
    best = 0;  // no bins inside the band: fall back to the largest-variance component
  } else {
    best = argmax_row(comps, [&](Eigen::Index r) { return peak[static_cast<std::size_t>(r)]; });
  }

  auto values = row_vector(comps, best);
  std::size_t imax = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (std::abs(values[i]) > std::abs(values[imax])) imax = i;
  }
  if (values[imax] < 0.0) {
    for (double& v : values) v = -v;
  }
  return {std::move(values), trace.fps};
}

}  // namespace rppg
