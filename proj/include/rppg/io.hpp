#pragma once

// File formats. Binary containers are little-endian:
//   FRV1: "FRV1" u32 width u32 height u32 frame_count f64 fps, then
//         frame_count * height * width * 3 bytes of interleaved RGB.
//   MSK1: "MSK1" u32 width u32 height u32 mask_count (1 = static), then one
//         0x00/0x01 byte per pixel per mask.
// Text formats are CSV with a header row, or one bitstring per line.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rppg/signal.hpp"

namespace rppg::io {

namespace fs = std::filesystem;

// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const fs::path& path, std::string_view bytes);
std::string read_file(const fs::path& path);

std::string encode_frv1(const FrameSequence& frames);
FrameSequence decode_frv1(std::string_view bytes);
void write_frv1(const fs::path& path, const FrameSequence& frames);
FrameSequence read_frv1(const fs::path& path);

std::string encode_msk1(const RoiMask& mask);
RoiMask decode_msk1(std::string_view bytes);
void write_msk1(const fs::path& path, const RoiMask& mask);
RoiMask read_msk1(const fs::path& path);

// `frame,r,g,b`
std::string format_trace_csv(const RgbTrace& trace);
RgbTrace parse_trace_csv(std::string_view text, double fps);

// `t,value`, t = i / sample_rate in seconds.
std::string format_signal_csv(const SampledSignal& signal);
// The sample rate is recovered from the t column.
SampledSignal parse_signal_csv(std::string_view text);

// Single-column CSV with the given header, e.g. `index` or `seconds`.
std::string format_column_csv(std::string_view header, const std::vector<double>& values);
std::vector<double> parse_column_csv(std::string_view text);

// One row per vector, comma separated, no header.
std::string format_matrix_csv(const std::vector<std::vector<double>>& rows);

std::string format_lines(const std::vector<std::string>& lines);
std::vector<std::string> parse_lines(std::string_view text);

// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace rppg::io
