#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rppg/auth.hpp"
#include "rppg/signal.hpp"
#include "support.hpp"

using namespace rppg;
using testing::code_of;

namespace {

std::vector<double> shape(double width, double bump, double phase = 0.0) {
  std::vector<double> c(kCycleLength);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double t = static_cast<double>(i) / (c.size() - 1);
    c[i] = std::exp(-std::pow((t - 0.2 - phase) / width, 2)) + bump * std::exp(-std::pow((t - 0.6) / 0.08, 2));
  }
  return normalize01(std::span<const double>(c));
}

CycleSet noisy_copies(const std::vector<double>& base, std::size_t n, double sigma, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  CycleSet set;
  for (std::size_t k = 0; k < n; ++k) {
    auto c = base;
    for (double& v : c) v += noise(rng);
    set.cycles.push_back(normalize01(std::span<const double>(c)));
  }
  return set;
}

std::vector<double> cosine_cycle(double phase) {
  std::vector<double> c(kCycleLength);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = 0.5 + 0.5 * std::cos(2 * std::numbers::pi * static_cast<double>(i) / c.size() + phase);
  return c;
}

}  // namespace

TEST_CASE("names") {
  CHECK(parse_distance("correlation") == DistanceKind::Correlation);
  CHECK(parse_distance(to_string(DistanceKind::Euclidean)) == DistanceKind::Euclidean);
  CHECK_FALSE(parse_distance("cosine").has_value());
  CHECK(to_string(AttackKind::MeanRppg) == "mean_rppg");
  CHECK(to_string(AttackKind::VictimRppg) == "victim_rppg");
  CHECK(to_string(AttackKind::Random) == "random");
}

TEST_CASE("cycle_distance") {
  const auto t = shape(0.1, 0.4);
  std::vector<double> inverted;
  for (double v : t) inverted.push_back(1.0 - v);
  CHECK(cycle_distance(t, t) == doctest::Approx(0.0));
  CHECK(cycle_distance(t, inverted) == doctest::Approx(2.0));
  CHECK(cycle_distance(t, std::vector<double>(t.size(), 0.5)) == 1.0);
  CHECK(cycle_distance(t, t, DistanceKind::Euclidean) == 0.0);
  CHECK(cycle_distance(std::vector<double>{0, 0}, std::vector<double>{3, 4}, DistanceKind::Euclidean) ==
        doctest::Approx(std::sqrt(12.5)));
  CHECK(code_of([&] { cycle_distance(t, std::vector<double>{1, 2}); }) == ErrorCode::BadCycle);
  // A quarter-period shift of a full cosine is uncorrelated.
  CHECK(std::abs(cycle_distance(cosine_cycle(0), cosine_cycle(std::numbers::pi / 2)) - 1.0) < 1e-9);
}

TEST_CASE("mean_cycle") {
  const auto a = shape(0.1, 0.4);
  CHECK(mean_cycle({{a}}) == a);
  const auto m = mean_cycle({{a, a}});
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(m[i] == doctest::Approx(a[i]));
  std::vector<double> up(kCycleLength), down(kCycleLength);
  for (std::size_t i = 0; i < kCycleLength; ++i) {
    up[i] = static_cast<double>(i) / (kCycleLength - 1);
    down[i] = 1.0 - up[i];
  }
  for (double v : mean_cycle({{up, down}})) CHECK(v == doctest::Approx(0.5));
  const auto b = shape(0.15, 0.1, 0.05);
  std::vector<double> mid(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mid[i] = (a[i] + b[i]) / 2;
  const auto expect = normalize01(std::span<const double>(mid));
  const auto got = mean_cycle({{a, b}});
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(got[i] == doctest::Approx(expect[i]));
  CHECK(code_of([] { mean_cycle({}); }) == ErrorCode::EmptyCycleSet);
  CHECK(code_of([&] { mean_cycle({{a, {0, 1}}}); }) == ErrorCode::BadCycle);
}

TEST_CASE("enroll") {
  const auto user = shape(0.1, 0.5);
  const auto other = shape(0.2, 0.0, 0.1);
  SUBCASE("identical cycles") {
    const CycleSet same{std::vector<std::vector<double>>(6, user)};
    const auto e = enroll_detailed(same, noisy_copies(other, 8, 0.02, 1), "u");
    for (std::size_t i = 0; i < user.size(); ++i) CHECK(e.user.waveform[i] == doctest::Approx(user[i]));
    for (double g : e.scores.genuine) CHECK(g == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(e.user.user_id == "u");
  }
  SUBCASE("separable users") {
    const auto e = enroll_detailed(noisy_copies(user, 20, 0.02, 2), noisy_copies(other, 20, 0.02, 3), "u");
    const double gmax = *std::max_element(e.scores.genuine.begin(), e.scores.genuine.end());
    const double imin = *std::min_element(e.scores.impostor.begin(), e.scores.impostor.end());
    REQUIRE(gmax < imin);
    CHECK(e.eer.eer == 0.0);
    CHECK(e.user.threshold > gmax);
    CHECK(e.user.threshold < imin);
  }
  SUBCASE("too few cycles") {
    CHECK(code_of([&] { enroll(noisy_copies(user, 4, 0.01, 1), noisy_copies(other, 9, 0.01, 1), "u"); }) ==
          ErrorCode::TooFewCycles);
    CHECK(code_of([&] { enroll(noisy_copies(user, 9, 0.01, 1), noisy_copies(other, 4, 0.01, 1), "u"); }) ==
          ErrorCode::TooFewCycles);
  }
}

TEST_CASE("authenticate") {
  const auto own = noisy_copies(shape(0.1, 0.5), 20, 0.03, 4);
  const auto user = enroll(own, noisy_copies(shape(0.2, 0.0, 0.1), 20, 0.03, 5), "u");
  const auto& t = user.waveform;
  CHECK(authenticate(t, user).accept);
  CHECK(authenticate(t, user).distance == doctest::Approx(0.0).epsilon(1e-12));
  std::vector<double> inverted;
  for (double v : t) inverted.push_back(1.0 - v);
  const auto inv = authenticate(inverted, user);
  CHECK_FALSE(inv.accept);
  CHECK(inv.distance == doctest::Approx(2.0));
  std::mt19937 rng(6);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (int k = 0; k < 20; ++k) {
    auto c = t;
    for (double& v : c) v = std::clamp(v + noise(rng), 0.0, 1.0);
    CHECK(authenticate(c, user).distance < 0.05);
  }
  CHECK(code_of([&] { authenticate(std::vector<double>(10, 0.5), user); }) == ErrorCode::BadCycle);
  CHECK(code_of([&] { authenticate(std::vector<double>(kCycleLength, 1.5), user); }) == ErrorCode::BadCycle);
}

TEST_CASE("spoof_eval") {
  const auto own = noisy_copies(shape(0.1, 0.5), 30, 0.05, 7);
  const auto e = enroll_detailed(own, noisy_copies(shape(0.2, 0.0, 0.1), 30, 0.05, 8), "u");
  SUBCASE("replaying the enrollment cycles") {
    const auto r = spoof_eval(e.user, own, AttackKind::VictimRppg);
    CHECK(r.attempts == 30);
    CHECK(r.success_rate >= 1.0 - e.eer.eer);
    CHECK(r.kind == AttackKind::VictimRppg);
  }
  SUBCASE("a mean attack is a single attempt") {
    const auto r = spoof_eval(e.user, own, AttackKind::MeanRppg);
    CHECK(r.attempts == 1);
    CHECK(r.accepted == 1);
  }
  SUBCASE("uncorrelated cycles are rejected") {
    const auto user = enroll(noisy_copies(cosine_cycle(0), 10, 0.05, 9),
                             noisy_copies(cosine_cycle(std::numbers::pi / 3), 10, 0.05, 10), "c");
    REQUIRE(user.threshold < 1.0);
    const auto r = spoof_eval(user, noisy_copies(cosine_cycle(std::numbers::pi / 2), 50, 0.01, 11), AttackKind::Random);
    CHECK(r.success_rate == 0.0);
  }
  SUBCASE("errors") {
    CHECK(code_of([&] { spoof_eval(e.user, {}, AttackKind::Random); }) == ErrorCode::EmptyCycleSet);
  }
}

TEST_CASE("acceptance grows with the threshold") {
  const auto own = noisy_copies(shape(0.1, 0.5), 20, 0.05, 12);
  auto user = enroll(own, noisy_copies(shape(0.2, 0.0, 0.1), 20, 0.05, 13), "u");
  const auto attack = noisy_copies(shape(0.12, 0.3, 0.03), 100, 0.08, 14);
  double prev = -1.0;
  for (double t : {0.0, 0.01, 0.05, 0.1, 0.3, 0.6, 1.0, 2.0}) {
    user.threshold = t;
    const double rate = spoof_eval(user, attack, AttackKind::Random).success_rate;
    CHECK(rate >= prev);
    prev = rate;
  }
  CHECK(prev == 1.0);
}
