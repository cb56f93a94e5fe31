#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rppg/sigh.hpp"
#include "rppg/synth.hpp"
#include "support.hpp"

using namespace rppg;
using namespace rppg::sigh;
using testing::code_of;

namespace {

FrameSequence grey(std::uint32_t w, std::uint32_t h, std::size_t n, std::uint8_t level) {
  return FrameSequence(w, h, 30, std::vector<std::vector<std::uint8_t>>(n, std::vector<std::uint8_t>(w * h * 3, level)));
}

FrameSequence noise_video(std::uint32_t w, std::uint32_t h, std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::vector<std::uint8_t>> frames(n, std::vector<std::uint8_t>(w * h * 3));
  for (auto& f : frames)
    for (auto& v : f) v = static_cast<std::uint8_t>(byte(rng));
  return FrameSequence(w, h, 30, std::move(frames));
}

RoiMask disc(std::uint32_t w, std::uint32_t h, double r) {
  std::vector<std::uint8_t> m(w * h);
  for (std::uint32_t y = 0; y < h; ++y)
    for (std::uint32_t x = 0; x < w; ++x)
      m[y * w + x] = std::hypot(x - w / 2.0, y - h / 2.0) <= r;
  return RoiMask(w, h, {m});
}

const synth::Scene& scene60() {
  static const synth::Scene s = [] {
    synth::PulseModel m;
    m.heart_rate_bpm = 60;
    synth::SceneConfig cfg;
    cfg.duration_s = 30;
    return synth::gen_frames(m, cfg);
  }();
  return s;
}

}  // namespace

TEST_CASE("templates") {
  CHECK(build_template(RoiMask::filled(3, 2, 1), 0).values == std::vector<double>(6, 1.0));
  CHECK(build_template(RoiMask::filled(3, 2, 0), 0).values == std::vector<double>(6, 0.0));
  const RoiMask checker(2, 2, {{1, 0, 0, 1}});
  CHECK(build_template(checker, 5).values == std::vector<double>{1, 0, 0, 1});
  const RoiMask moving(2, 1, {{1, 0}, {0, 1}});
  CHECK(build_template(moving, 1).values == std::vector<double>{0, 1});
  CHECK(code_of([&] { build_template(moving, 2); }) == ErrorCode::DimensionMismatch);
  const auto k = UniformKernel{}.as_field();
  CHECK(k.width == 30);
  double sum = 0;
  for (double v : k.values) sum += v;
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("blur") {
  SUBCASE("constants are preserved") {
    for (double v : blur_template({40, 35, std::vector<double>(40 * 35, 1.0)}).values) CHECK(v == doctest::Approx(1.0));
    for (double v : blur_template({40, 35, std::vector<double>(40 * 35, 0.0)}).values) CHECK(v == 0.0);
  }
  SUBCASE("step edge becomes a 30-column ramp") {
    const std::uint32_t w = 100, h = 8;
    Field f{w, h, std::vector<double>(w * h, 0.0)};
    for (std::uint32_t y = 0; y < h; ++y)
      for (std::uint32_t x = 50; x < w; ++x) f.values[y * w + x] = 1.0;
    const auto b = blur_template(f);
    for (std::uint32_t x = 0; x < w; ++x) {
      // Columns x-15 .. x+14 of the window that fall at or beyond the edge.
      const double expect = std::clamp((static_cast<double>(x) + 14 - 50 + 1) / 30.0, 0.0, 1.0);
      CHECK(b.at(3, x) == doctest::Approx(expect));
    }
  }
  SUBCASE("matches direct convolution") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    for (auto [w, h, size] : {std::tuple{37, 23, 30}, {5, 9, 30}, {64, 64, 7}, {1, 6, 4}, {12, 12, 1}}) {
      Field f{static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(h), std::vector<double>(w * h)};
      for (double& v : f.values) v = u(rng);
      const auto got = blur_template(f, UniformKernel{size}).values;
      const auto expect = oracle::box_blur(f.values, w, h, size);
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-12);
    }
  }
  SUBCASE("errors") {
    CHECK(code_of([] { blur_template({2, 2, {1, 2, 3}}); }) == ErrorCode::DimensionMismatch);
    CHECK(code_of([] { blur_template({1, 1, {1}}, UniformKernel{0}); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("waveforms") {
  const auto s = sine_waveform(1.0, 30, 60, 2.0);
  CHECK(s.size() == 60);
  CHECK(s[0] == 0.0);
  CHECK(std::abs(s[15]) < 1e-12);
  CHECK(sine_waveform(1.0, 4, 4, 2.0)[1] == doctest::Approx(2.0));
  CHECK(code_of([] { sine_waveform(0.5, 30, 10, 1); }) == ErrorCode::FrequencyOutOfBand);
  CHECK(code_of([] { sine_waveform(4.5, 30, 10, 1); }) == ErrorCode::FrequencyOutOfBand);
  CHECK(code_of([] { sine_waveform(1.0, 30, 10, -1); }) == ErrorCode::InvalidArgument);

  const auto c = custom_waveform(std::vector<double>{0, 1, 0}, 6, 3.0);
  const std::vector<double> expect = {0, 0.4, 0.8, 0.8, 0.4, 0};
  for (std::size_t i = 0; i < 6; ++i) CHECK(c[i] == doctest::Approx(3.0 * expect[i]));
  // Scaled by the largest magnitude.
  const auto d = custom_waveform(std::vector<double>{0, -4, 2}, 3, 1.0);
  CHECK(d[1] == doctest::Approx(-1.0));
  CHECK(code_of([] { custom_waveform(std::vector<double>{1}, 6, 1); }) == ErrorCode::BadCustomSignal);
  CHECK(code_of([] { custom_waveform(std::vector<double>{0, 0}, 6, 1); }) == ErrorCode::BadCustomSignal);
  CHECK(code_of([] { custom_waveform(std::vector<double>{0, NAN}, 6, 1); }) == ErrorCode::BadCustomSignal);
}

TEST_CASE("inject") {
  SUBCASE("zero waveform is the identity") {
    const auto v = noise_video(20, 16, 5, 1);
    CHECK(inject(v, disc(20, 16, 5), std::vector<double>(5, 0.0)) == v);
    CHECK(inject(v, disc(20, 16, 5), sine_waveform(1.5, 30, 5, 0.0)) == v);
  }
  SUBCASE("constant shift on a full mask") {
    const auto out = inject(grey(12, 10, 3, 128), RoiMask::filled(12, 10, 1), std::vector<double>(3, 2.0),
                            InjectionConfig{{1.0, 1.0, 1.0}, {}});
    for (std::size_t t = 0; t < 3; ++t)
      for (auto v : out.frame(t)) CHECK(v == 130);
    // Default channel gains scale the shift per channel.
    const auto weighted = inject(grey(12, 10, 1, 128), RoiMask::filled(12, 10, 1), std::vector<double>(1, 2.0));
    CHECK(weighted.at(0, 0, 0, 0) == 129);
    CHECK(weighted.at(0, 0, 0, 1) == 130);
    CHECK(weighted.at(0, 0, 0, 2) == 129);
  }
  SUBCASE("saturation") {
    const auto out = inject(grey(4, 4, 2, 255), RoiMask::filled(4, 4, 1), std::vector<double>{3.0, 200.0});
    for (std::size_t t = 0; t < 2; ++t)
      for (auto v : out.frame(t)) CHECK(v == 255);
    const auto low = inject(grey(4, 4, 1, 1), RoiMask::filled(4, 4, 1), std::vector<double>{-5.0});
    for (auto v : low.frame(0)) CHECK(v == 0);
  }
  SUBCASE("deltas are bounded and stay near the region") {
    const std::uint32_t w = 80, h = 70;
    const auto v = noise_video(w, h, 6, 3);
    const auto mask = disc(w, h, 6);
    const double amp = 2.0;
    const auto out = inject(v, mask, sine_waveform(1.5, 30, 6, amp));
    const auto m = mask.for_frame(0);
    for (std::uint32_t y = 0; y < h; ++y) {
      for (std::uint32_t x = 0; x < w; ++x) {
        long reach = 1000;
        for (std::uint32_t yy = 0; yy < h; ++yy)
          for (std::uint32_t xx = 0; xx < w; ++xx)
            if (m[yy * w + xx])
              reach = std::min(reach, std::max(std::labs(long(x) - long(xx)), std::labs(long(y) - long(yy))));
        for (std::size_t t = 0; t < 6; ++t) {
          for (int c = 0; c < 3; ++c) {
            const int d = std::abs(int(out.at(t, y, x, c)) - int(v.at(t, y, x, c)));
            CHECK(d <= std::ceil(amp));
            if (reach > 15) CHECK(d == 0);
          }
        }
      }
    }
  }
  SUBCASE("additive up to rounding") {
    const auto v = grey(40, 40, 30, 120);
    const auto mask = disc(40, 40, 10);
    const auto a = sine_waveform(1.2, 30, 30, 2.0);
    const auto b = sine_waveform(2.1, 30, 30, 3.0);
    std::vector<double> ab(30);
    for (std::size_t t = 0; t < 30; ++t) ab[t] = a[t] + b[t];
    const auto twice = inject(inject(v, mask, a), mask, b);
    const auto once = inject(v, mask, ab);
    for (std::size_t t = 0; t < 30; ++t)
      for (std::size_t i = 0; i < once.frame(t).size(); ++i)
        CHECK(std::abs(int(twice.frame(t)[i]) - int(once.frame(t)[i])) <= 1);
  }
  SUBCASE("output keeps its shape") {
    const auto v = noise_video(9, 7, 4, 5);
    const auto out = inject(v, disc(9, 7, 2), sine_waveform(1.5, 30, 4, 2));
    CHECK(out.width() == 9);
    CHECK(out.height() == 7);
    CHECK(out.size() == 4);
    CHECK(out.fps() == v.fps());
  }
  SUBCASE("errors") {
    const auto v = grey(4, 4, 3, 0);
    CHECK(code_of([&] { inject(v, RoiMask::filled(4, 4, 1), std::vector<double>(2, 1.0)); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([&] { inject(v, RoiMask::filled(5, 4, 1), std::vector<double>(3, 1.0)); }) ==
          ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("verify_hiding") {
  const auto& s = scene60();
  const auto wave = sine_waveform(1.5, s.frames.fps(), s.frames.size(), kDefaultAmplitude);
  SUBCASE("nothing injected") {
    const auto r = verify_hiding(s.frames, s.frames, s.mask, s.truth, wave);
    CHECK(r.original_vs_truth == r.protected_vs_truth);
    CHECK(r.original_vs_wave == r.protected_vs_wave);
    CHECK(r.original_vs_truth >= 0.9);
    CHECK_FALSE(r.hidden);
  }
  SUBCASE("default decoy hides the pulse") {
    const auto r = verify_hiding(s.frames, inject(s.frames, s.mask, wave), s.mask, s.truth, wave);
    CHECK(r.protected_vs_truth <= kMaxResidualTruthCorrelation);
    CHECK(r.protected_vs_wave >= kMinDecoyCorrelation);
    CHECK(r.hidden);
  }
  SUBCASE("a decoy below one intensity level does nothing") {
    const auto tiny = sine_waveform(1.5, s.frames.fps(), s.frames.size(), 0.001);
    const auto prot = inject(s.frames, s.mask, tiny);
    CHECK(prot == s.frames);
    const auto r = verify_hiding(s.frames, prot, s.mask, s.truth, tiny);
    CHECK(r.protected_vs_truth == doctest::Approx(r.original_vs_truth));
    CHECK_FALSE(r.hidden);
  }
  SUBCASE("errors") {
    CHECK(code_of([&] { verify_hiding(s.frames, grey(64, 64, 3, 0), s.mask, s.truth, wave); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(code_of([&] { verify_hiding(s.frames, s.frames, s.mask, s.truth, std::vector<double>(4)); }) ==
          ErrorCode::LengthMismatch);
  }
}
