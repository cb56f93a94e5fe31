#include <doctest.h>

#include <random>

#include "rppg/io.hpp"
#include "support.hpp"

using namespace rppg;
using testing::code_of;

namespace {

FrameSequence random_frames(std::uint32_t w, std::uint32_t h, std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<std::vector<std::uint8_t>> frames(n, std::vector<std::uint8_t>(std::size_t{w} * h * 3));
  for (auto& f : frames)
    for (auto& v : f) v = static_cast<std::uint8_t>(byte(rng));
  return FrameSequence(w, h, 29.97, std::move(frames));
}

}  // namespace

TEST_CASE("FRV1 round trip") {
  const auto frames = random_frames(5, 3, 4, 1);
  const auto bytes = io::encode_frv1(frames);
  CHECK(bytes.size() == 24 + 4 * 5 * 3 * 3);
  CHECK(bytes.substr(0, 4) == "FRV1");
  // Little-endian width.
  CHECK(static_cast<unsigned char>(bytes[4]) == 5);
  CHECK(static_cast<unsigned char>(bytes[5]) == 0);
  CHECK(io::decode_frv1(bytes) == frames);
}

TEST_CASE("FRV1 rejects malformed input") {
  auto bytes = io::encode_frv1(random_frames(2, 2, 2, 2));
  CHECK(code_of([&] { io::decode_frv1(bytes.substr(0, bytes.size() - 1)); }) == ErrorCode::Format);
  CHECK(code_of([&] { io::decode_frv1(bytes + "x"); }) == ErrorCode::Format);
  CHECK(code_of([&] { io::decode_frv1(bytes.substr(0, 10)); }) == ErrorCode::Format);
  auto bad = bytes;
  bad[0] = 'X';
  CHECK(code_of([&] { io::decode_frv1(bad); }) == ErrorCode::Format);
  CHECK(code_of([] { io::decode_frv1(""); }) == ErrorCode::Format);
}

TEST_CASE("MSK1 round trip") {
  const RoiMask fixed(3, 2, {{1, 0, 1, 0, 1, 1}});
  CHECK(io::decode_msk1(io::encode_msk1(fixed)) == fixed);
  CHECK(io::encode_msk1(fixed).size() == 16 + 6);
  const RoiMask moving(2, 1, {{1, 0}, {0, 1}, {1, 1}});
  CHECK(io::decode_msk1(io::encode_msk1(moving)) == moving);
  auto bytes = io::encode_msk1(fixed);
  bytes.back() = 2;
  CHECK(code_of([&] { io::decode_msk1(bytes); }) == ErrorCode::Format);
  CHECK(code_of([&] { io::decode_msk1(bytes.substr(0, 15)); }) == ErrorCode::Format);
}

TEST_CASE("file round trips and atomic writes") {
  testing::TempDir dir;
  const auto frames = random_frames(4, 4, 3, 3);
  io::write_frv1(dir / "v.frv1", frames);
  CHECK(io::read_frv1(dir / "v.frv1") == frames);
  const auto mask = RoiMask::filled(4, 4, 1);
  io::write_msk1(dir / "m.msk1", mask);
  CHECK(io::read_msk1(dir / "m.msk1") == mask);

  io::write_atomic(dir / "a.txt", "first");
  io::write_atomic(dir / "a.txt", "second");
  CHECK(io::read_file(dir / "a.txt") == "second");
  // Nothing but the target is left behind.
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path())) ++entries;
  CHECK(entries == 3);

  CHECK(code_of([&] { io::read_file(dir / "missing"); }) == ErrorCode::Io);
  CHECK(code_of([&] { io::write_atomic(dir / "no" / "such" / "dir.txt", "x"); }) == ErrorCode::Io);
}

TEST_CASE("trace CSV") {
  const auto t = RgbTrace::from_channels({1.5, 2}, {3, 4.25}, {0.1, 6}, 30);
  const auto text = io::format_trace_csv(t);
  CHECK(text.rfind("frame,r,g,b\n", 0) == 0);
  CHECK(text.find("0,1.5,3,0.1\n") != std::string::npos);
  const auto back = io::parse_trace_csv(text, 30);
  CHECK(back.samples == t.samples);
  CHECK(code_of([] { io::parse_trace_csv("frame,r,g\n0,1,2\n", 30); }) == ErrorCode::Format);
  CHECK(code_of([] { io::parse_trace_csv("frame,r,g,b\n0,1,2\n", 30); }) == ErrorCode::Format);
  CHECK(code_of([] { io::parse_trace_csv("frame,r,g,b\n0,1,2,zz\n", 30); }) == ErrorCode::Format);
}

TEST_CASE("signal CSV keeps values exactly and recovers the rate") {
  std::mt19937 rng(9);
  std::normal_distribution<double> n01;
  SampledSignal s{{}, 30};
  for (int i = 0; i < 200; ++i) s.values.push_back(n01(rng));
  const auto text = io::format_signal_csv(s);
  CHECK(text.rfind("t,value\n", 0) == 0);
  const auto back = io::parse_signal_csv(text);
  CHECK(back.values == s.values);
  CHECK(back.sample_rate == doctest::Approx(30.0).epsilon(1e-12));
  CHECK(code_of([] { io::parse_signal_csv("t,value\n0,1\n"); }) == ErrorCode::Format);
}

TEST_CASE("column and matrix CSV") {
  const std::vector<double> v = {1.0, 0.5, 1.0 / 3.0};
  const auto text = io::format_column_csv("seconds", v);
  CHECK(text.rfind("seconds\n", 0) == 0);
  CHECK(io::parse_column_csv(text) == v);
  CHECK(io::format_column_csv("index", {0, 30, 60}) == "index\n0\n30\n60\n");
  CHECK(io::format_matrix_csv({{0, 0.5}, {1, 0.25}}) == "0,0.5\n1,0.25\n");
  CHECK(code_of([] { io::parse_column_csv(""); }) == ErrorCode::Format);
}

TEST_CASE("lines and doubles") {
  CHECK(io::format_lines({"00000000", "11000000"}) == "00000000\n11000000\n");
  CHECK(io::parse_lines("a\nb\n") == std::vector<std::string>{"a", "b"});
  CHECK(io::parse_lines("a\r\nb") == std::vector<std::string>{"a", "b"});
  for (double x : {0.1, 1e-300, 123456.789, -2.5, 1.0 / 7.0}) CHECK(std::stod(io::format_double(x)) == x);
  CHECK(io::format_double(2.0) == "2");
}
