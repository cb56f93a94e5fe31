#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rppg/metrics.hpp"
#include "support.hpp"

using namespace rppg;
using testing::code_of;

TEST_CASE("mae") {
  CHECK(mae({{1, 2, 3}, {1, 2, 3}}) == 0.0);
  CHECK(mae({{1, 2, 3}, {2, 2, 2}}) == doctest::Approx(2.0 / 3.0));
  CHECK(mae({{0}, {0.0322}}) == doctest::Approx(0.0322));
  CHECK(code_of([] { mae({{1, 2}, {1}}); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([] { mae({{}, {}}); }) == ErrorCode::EmptySeries);
}

TEST_CASE("rmse") {
  CHECK(rmse({{4, 5}, {4, 5}}) == 0.0);
  CHECK(rmse({{0, 0}, {3, 4}}) == doctest::Approx(std::sqrt(12.5)));
  CHECK(code_of([] { rmse({{}, {}}); }) == ErrorCode::EmptySeries);
}

TEST_CASE("pearson") {
  const std::vector<double> a = {0.3, -1.2, 4.4, 2.0};
  std::vector<double> neg;
  for (double v : a) neg.push_back(-v);
  CHECK(pearson(PairedSeries{a, a}) == 1.0);
  CHECK(pearson(PairedSeries{a, neg}) == -1.0);
  CHECK(pearson(PairedSeries{{1, 2, 3}, {1, 2, 4}}) == doctest::Approx(0.9819805060619657));
  CHECK(code_of([] { pearson(PairedSeries{{1, 1, 1}, {1, 2, 3}}); }) == ErrorCode::ZeroVariance);
}

TEST_CASE("bhr") {
  CHECK(bhr("0110", "0110") == 1.0);
  CHECK(bhr("1010", "1001") == 0.5);
  // Only the overlap counts.
  CHECK(bhr("10", "1011") == 1.0);
  CHECK(code_of([] { bhr("", "1"); }) == ErrorCode::EmptyBits);
  std::mt19937_64 rng(4);
  std::string fixed(100000, '1'), random(100000, '0');
  for (auto& c : random) c = (rng() & 1) ? '1' : '0';
  CHECK(std::abs(bhr(fixed, random) - 0.5) <= 0.01);
}

TEST_CASE("far_frr_eer") {
  SUBCASE("separable") {
    const auto r = far_frr_eer({{0.1, 0.1, 0.1}, {0.9, 0.9}});
    CHECK(r.eer == 0.0);
    CHECK(r.threshold > 0.1);
    CHECK(r.threshold < 0.9);
  }
  SUBCASE("indistinguishable") {
    const std::vector<double> s = {0.2, 0.4, 0.6, 0.8};
    CHECK(far_frr_eer({s, s}).eer == doctest::Approx(0.5));
  }
  SUBCASE("interleaved") {
    const auto r = far_frr_eer({{0.1, 0.2, 0.3, 0.4}, {0.25, 0.35, 0.45, 0.55}});
    CHECK(r.eer == doctest::Approx(0.25));
    const auto o = oracle::eer({0.1, 0.2, 0.3, 0.4}, {0.25, 0.35, 0.45, 0.55});
    CHECK(r.threshold == o.threshold);
  }
  SUBCASE("roc is monotone") {
    const auto r = far_frr_eer({{0.1, 0.3, 0.35, 0.5}, {0.2, 0.4, 0.6, 0.9, 0.95}});
    for (std::size_t i = 1; i < r.roc.size(); ++i) {
      CHECK(r.roc[i].threshold > r.roc[i - 1].threshold);
      CHECK(r.roc[i].far >= r.roc[i - 1].far);
      CHECK(r.roc[i].frr <= r.roc[i - 1].frr);
    }
    CHECK(r.roc.front().far == 0.0);
    CHECK(r.roc.front().frr == 1.0);
    CHECK(r.roc.back().far == 1.0);
    CHECK(r.roc.back().frr == 0.0);
  }
  SUBCASE("empty") {
    CHECK(code_of([] { far_frr_eer({{}, {1.0}}); }) == ErrorCode::EmptyScores);
  }
}

TEST_CASE("metrics agree with brute-force references on random instances") {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> len(2, 30);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 100; ++trial) {
    CAPTURE(trial);
    const auto n = static_cast<std::size_t>(len(rng));
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = n01(rng);
      b[i] = 0.5 * a[i] + n01(rng);
    }
    const PairedSeries p{a, b};
    CHECK(std::abs(mae(p) - oracle::mae(a, b)) <= 1e-9);
    CHECK(std::abs(rmse(p) - oracle::rmse(a, b)) <= 1e-9);
    CHECK(std::abs(pearson(p) - oracle::pearson(a, b)) <= 1e-9);

    std::string x(8 * n, '0'), y(8 * n + trial % 5, '0');
    for (auto& c : x) c = (rng() & 1) ? '1' : '0';
    for (auto& c : y) c = (rng() & 1) ? '1' : '0';
    CHECK(std::abs(bhr(x, y) - oracle::bhr(x, y)) <= 1e-9);

    // Coarse scores so ties between and within classes occur.
    std::vector<double> g(static_cast<std::size_t>(len(rng))), im(static_cast<std::size_t>(len(rng)));
    for (auto& s : g) s = std::round(std::abs(n01(rng)) * 5) / 10.0;
    for (auto& s : im) s = std::round((1 + std::abs(n01(rng))) * 5) / 10.0;
    const auto r = far_frr_eer({g, im});
    const auto o = oracle::eer(g, im);
    CHECK(r.eer == o.eer);
    CHECK(r.threshold == o.threshold);
  }
}

TEST_CASE("metric properties") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(20), b(20);
    for (std::size_t i = 0; i < 20; ++i) {
      a[i] = n01(rng);
      b[i] = n01(rng);
    }
    const double r = pearson(PairedSeries{a, b});
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
    CHECK(r == doctest::Approx(pearson(PairedSeries{b, a})));
    std::vector<double> scaled = b;
    for (double& v : scaled) v = 3 * v + 7;
    CHECK(pearson(PairedSeries{a, scaled}) == doctest::Approx(r));
    CHECK(mae(PairedSeries{a, b}) <= rmse(PairedSeries{a, b}) + 1e-12);
    CHECK(mae(PairedSeries{a, b}) == doctest::Approx(mae(PairedSeries{b, a})));
  }
}

TEST_CASE("align_by_first_peak") {
  SUBCASE("candidate starts with a spurious peak") {
    const PeakList ref{{30, 60, 90, 120}, 30};
    const PeakList cand{{5, 31, 61, 92}, 30};
    const auto p = align_by_first_peak(ref, cand);
    REQUIRE(p.size() == 2);
    CHECK(p.reference == std::vector<double>{1, 1});
    CHECK(p.candidate[0] == doctest::Approx(1.0));
    CHECK(p.candidate[1] == doctest::Approx(31.0 / 30));
  }
  SUBCASE("different rates") {
    const auto p = align_by_first_peak({{0, 30, 60}, 30}, {{0, 60, 120}, 60});
    CHECK(p.reference == p.candidate);
  }
  SUBCASE("no match within tolerance") {
    CHECK(code_of([] { align_by_first_peak({{0, 30}, 30}, {{15, 45}, 30}); }) == ErrorCode::NoPeaks);
  }
  SUBCASE("truncation") {
    const auto p = PairedSeries::truncated({1, 2, 3}, {4});
    CHECK(p.reference == std::vector<double>{1});
    CHECK(p.candidate == std::vector<double>{4});
  }
}
