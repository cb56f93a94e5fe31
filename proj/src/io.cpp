#include "rppg/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "rppg/error.hpp"

namespace rppg::io {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw Error(ErrorCode::Format, "truncated file");
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint32_t u32() {
    auto b = take(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[static_cast<std::size_t>(i)]);
    return v;
  }
  double f64() {
    auto b = take(8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[static_cast<std::size_t>(i)]);
    return std::bit_cast<double>(v);
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::Format, "bad number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Non-empty lines with trailing CR stripped.
std::vector<std::string_view> text_lines(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::vector<double>> parse_table(std::string_view text, std::string_view header, std::size_t cols) {
  const auto lines = text_lines(text);
  if (lines.empty() || lines.front() != header)
    throw Error(ErrorCode::Format, "expected CSV header '" + std::string(header) + "'");
  std::vector<std::vector<double>> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i], ',');
    if (fields.size() != cols) throw Error(ErrorCode::Format, "wrong column count on line " + std::to_string(i + 1));
    std::vector<double> row;
    for (auto f : fields) row.push_back(parse_double(f));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_atomic(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::Io, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string encode_frv1(const FrameSequence& frames) {
  std::string out = "FRV1";
  put_u32(out, frames.width());
  put_u32(out, frames.height());
  put_u32(out, static_cast<std::uint32_t>(frames.size()));
  put_f64(out, frames.fps());
  out.reserve(out.size() + frames.size() * frames.pixels() * 3);
  for (const auto& f : frames.frames()) out.append(reinterpret_cast<const char*>(f.data()), f.size());
  return out;
}

FrameSequence decode_frv1(std::string_view bytes) {
  Reader r(bytes);
  if (r.take(4) != "FRV1") throw Error(ErrorCode::Format, "bad FRV1 magic");
  const auto w = r.u32();
  const auto h = r.u32();
  const auto n = r.u32();
  const double fps = r.f64();
  const std::size_t frame_bytes = std::size_t{w} * h * 3;
  if (n == 0 || w == 0 || h == 0) throw Error(ErrorCode::Format, "FRV1 header has zero dimension");
  if ((bytes.size() - 24) != frame_bytes * n) throw Error(ErrorCode::Format, "FRV1 payload size mismatch");
  std::vector<std::vector<std::uint8_t>> frames(n);
  for (auto& f : frames) {
    auto chunk = r.take(frame_bytes);
    f.assign(reinterpret_cast<const std::uint8_t*>(chunk.data()),
             reinterpret_cast<const std::uint8_t*>(chunk.data()) + chunk.size());
  }
  try {
    return FrameSequence(w, h, fps, std::move(frames));
  } catch (const Error& e) {
    throw Error(ErrorCode::Format, e.what());
  }
}

void write_frv1(const fs::path& path, const FrameSequence& frames) { write_atomic(path, encode_frv1(frames)); }
FrameSequence read_frv1(const fs::path& path) { return decode_frv1(read_file(path)); }

std::string encode_msk1(const RoiMask& mask) {
  std::string out = "MSK1";
  put_u32(out, mask.width());
  put_u32(out, mask.height());
  put_u32(out, static_cast<std::uint32_t>(mask.count()));
  for (const auto& m : mask.masks()) out.append(reinterpret_cast<const char*>(m.data()), m.size());
  return out;
}

RoiMask decode_msk1(std::string_view bytes) {
  Reader r(bytes);
  if (r.take(4) != "MSK1") throw Error(ErrorCode::Format, "bad MSK1 magic");
  const auto w = r.u32();
  const auto h = r.u32();
  const auto n = r.u32();
  const std::size_t mask_bytes = std::size_t{w} * h;
  if (n == 0 || w == 0 || h == 0) throw Error(ErrorCode::Format, "MSK1 header has zero dimension");
  if ((bytes.size() - 16) != mask_bytes * n) throw Error(ErrorCode::Format, "MSK1 payload size mismatch");
  std::vector<std::vector<std::uint8_t>> masks(n);
  for (auto& m : masks) {
    auto chunk = r.take(mask_bytes);
    m.assign(reinterpret_cast<const std::uint8_t*>(chunk.data()),
             reinterpret_cast<const std::uint8_t*>(chunk.data()) + chunk.size());
  }
  try {
    return RoiMask(w, h, std::move(masks));
  } catch (const Error& e) {
    throw Error(ErrorCode::Format, e.what());
  }
}

void write_msk1(const fs::path& path, const RoiMask& mask) { write_atomic(path, encode_msk1(mask)); }
RoiMask read_msk1(const fs::path& path) { return decode_msk1(read_file(path)); }

std::string format_trace_csv(const RgbTrace& trace) {
  std::string out = "frame,r,g,b\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace.samples[i];
    out += std::to_string(i) + "," + format_double(s[0]) + "," + format_double(s[1]) + "," +
           format_double(s[2]) + "\n";
  }
  return out;
}

RgbTrace parse_trace_csv(std::string_view text, double fps) {
  RgbTrace trace;
  trace.fps = fps;
  for (const auto& row : parse_table(text, "frame,r,g,b", 4)) trace.samples.push_back({row[1], row[2], row[3]});
  return trace;
}

std::string format_signal_csv(const SampledSignal& signal) {
  std::string out = "t,value\n";
  for (std::size_t i = 0; i < signal.size(); ++i) {
    out += format_double(static_cast<double>(i) / signal.sample_rate) + "," + format_double(signal.values[i]) + "\n";
  }
  return out;
}

SampledSignal parse_signal_csv(std::string_view text) {
  const auto rows = parse_table(text, "t,value", 2);
  if (rows.size() < 2) throw Error(ErrorCode::Format, "signal CSV needs at least 2 rows to infer the rate");
  SampledSignal s;
  for (const auto& row : rows) s.values.push_back(row[1]);
  const double span = rows.back()[0] - rows.front()[0];
  if (!(span > 0.0)) throw Error(ErrorCode::Format, "signal CSV time column is not increasing");
  // Times are written as i/rate; snap the estimate to 1e-6 Hz so that
  // rates such as 30 or 29.97 come back exactly.
  s.sample_rate = std::round(static_cast<double>(rows.size() - 1) / span * 1e6) / 1e6;
  return s;
}

std::string format_column_csv(std::string_view header, const std::vector<double>& values) {
  std::string out(header);
  out += "\n";
  for (double v : values) out += format_double(v) + "\n";
  return out;
}

std::vector<double> parse_column_csv(std::string_view text) {
  const auto lines = text_lines(text);
  if (lines.empty()) throw Error(ErrorCode::Format, "empty CSV");
  std::vector<double> out;
  for (std::size_t i = 1; i < lines.size(); ++i) out.push_back(parse_double(lines[i]));
  return out;
}

std::string format_matrix_csv(const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string format_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::vector<std::string> parse_lines(std::string_view text) {
  std::vector<std::string> out;
  for (auto l : text_lines(text)) out.emplace_back(l);
  return out;
}

}  // namespace rppg::io
