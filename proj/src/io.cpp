#include "vibdiag/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "vibdiag/error.hpp"

namespace vibdiag::io {

namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

std::uint32_t read_u32(std::span<const std::byte> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t read_u16(std::span<const std::byte> b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<std::uint16_t>(b[at]) |
                                    (static_cast<std::uint16_t>(b[at + 1]) << 8));
}

[[noreturn]] void wav_error(std::size_t offset, const std::string& what) {
  fail(ErrorKind::Parse, "WAV parse error at byte offset " + std::to_string(offset) + ": " + what);
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

SignalFormat parse_format(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "csv") return SignalFormat::Csv;
  if (lower == "wav") return SignalFormat::Wav;
  fail(ErrorKind::Configuration, "unknown signal format '" + std::string(name) + "'");
}

SignalFormat format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".wav" ? SignalFormat::Wav : SignalFormat::Csv;
}

Signal parse_csv(std::istream& in, double rate_hz) {
  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string cell = trim(line);
    if (cell.empty()) continue;
    double value = 0.0;
    if (!parse_double(cell, value)) {
      if (!seen_content) {
        seen_content = true;  // header
        continue;
      }
      fail(ErrorKind::Parse, "CSV parse error on line " + std::to_string(line_no) +
                                 ": '" + cell + "' is not a number");
    }
    if (!std::isfinite(value)) {
      fail(ErrorKind::Parse, "CSV parse error on line " + std::to_string(line_no) +
                                 ": value is not finite");
    }
    seen_content = true;
    samples.push_back(value);
  }
  return Signal(std::move(samples), rate_hz);
}

Signal parse_wav(std::span<const std::byte> bytes, int channel) {
  if (bytes.size() < 12) wav_error(0, "file shorter than a RIFF header");
  if (std::memcmp(bytes.data(), "RIFF", 4) != 0) wav_error(0, "missing RIFF tag");
  if (std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) wav_error(8, "missing WAVE tag");

  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t bits = 0;
  bool have_fmt = false;
  std::size_t fmt_at = 12;
  std::size_t data_at = 0;
  std::size_t data_size = 0;
  bool have_data = false;

  std::size_t at = 12;
  while (at + 8 <= bytes.size()) {
    const std::uint32_t size = read_u32(bytes, at + 4);
    const std::size_t body = at + 8;
    if (body + size > bytes.size()) {
      // Tolerate a truncated trailing data chunk from streaming writers.
      if (std::memcmp(bytes.data() + at, "data", 4) != 0) wav_error(at, "chunk overruns file");
    }
    if (std::memcmp(bytes.data() + at, "fmt ", 4) == 0) {
      if (size < 16) wav_error(at, "fmt chunk too small");
      fmt_at = body;
      format = read_u16(bytes, body);
      channels = read_u16(bytes, body + 2);
      rate = read_u32(bytes, body + 4);
      bits = read_u16(bytes, body + 14);
      if (format == kFormatExtensible) {
        if (size < 40) wav_error(at, "extensible fmt chunk too small");
        format = read_u16(bytes, body + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(bytes.data() + at, "data", 4) == 0) {
      data_at = body;
      data_size = std::min<std::size_t>(size, bytes.size() - body);
      have_data = true;
      break;
    }
    at = body + size + (size & 1u);
  }
  if (!have_fmt) wav_error(at, "no fmt chunk");
  if (!have_data) wav_error(at, "no data chunk");
  if (channels == 0) wav_error(fmt_at + 2, "zero channels");
  if (rate == 0) wav_error(fmt_at + 4, "zero sample rate");
  if (channel < 0 || channel >= channels) {
    fail(ErrorKind::Configuration, "channel " + std::to_string(channel) + " requested but file has " +
                                       std::to_string(channels));
  }
  const bool is_float = format == kFormatFloat;
  if (!is_float && format != kFormatPcm) wav_error(fmt_at, "unsupported format tag " + std::to_string(format));
  if (is_float ? (bits != 32 && bits != 64) : (bits != 16 && bits != 24 && bits != 32)) {
    wav_error(fmt_at + 14, "unsupported bit depth " + std::to_string(bits));
  }

  const std::size_t width = bits / 8;
  const std::size_t frame = width * channels;
  const std::size_t frames = data_size / frame;
  std::vector<double> samples(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t p = data_at + f * frame + static_cast<std::size_t>(channel) * width;
    double v = 0.0;
    if (is_float && bits == 32) {
      float x;
      const std::uint32_t raw = read_u32(bytes, p);
      std::memcpy(&x, &raw, sizeof x);
      v = x;
    } else if (is_float) {
      const std::uint64_t raw = static_cast<std::uint64_t>(read_u32(bytes, p)) |
                                (static_cast<std::uint64_t>(read_u32(bytes, p + 4)) << 32);
      std::memcpy(&v, &raw, sizeof v);
    } else if (bits == 16) {
      v = static_cast<std::int16_t>(read_u16(bytes, p)) / 32768.0;
    } else if (bits == 24) {
      std::uint32_t raw = static_cast<std::uint32_t>(bytes[p]) |
                          (static_cast<std::uint32_t>(bytes[p + 1]) << 8) |
                          (static_cast<std::uint32_t>(bytes[p + 2]) << 16);
      if (raw & 0x800000u) raw |= 0xFF000000u;
      v = static_cast<std::int32_t>(raw) / 8388608.0;
    } else {
      v = static_cast<std::int32_t>(read_u32(bytes, p)) / 2147483648.0;
    }
    if (!std::isfinite(v)) wav_error(p, "non-finite sample");
    samples[f] = v;
  }
  return Signal(std::move(samples), static_cast<double>(rate));
}

Signal read_signal(const std::filesystem::path& path, SignalFormat format, int channel,
                   std::optional<double> rate_hz) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path.string() + "'");
  if (format == SignalFormat::Csv) {
    if (!rate_hz) fail(ErrorKind::Configuration, "a sample rate is required for CSV input");
    if (channel != 0) fail(ErrorKind::Configuration, "CSV input has a single channel");
    return parse_csv(in, *rate_hz);
  }
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_wav(std::as_bytes(std::span<const char>(raw)), channel);
}

void write_signal_csv(const std::filesystem::path& path, const Signal& s) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << "amplitude\n";
  char buf[32];
  for (double v : s.samples()) {
    std::snprintf(buf, sizeof buf, "%.17g\n", v);
    out << buf;
  }
  if (!out) fail(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

}  // namespace vibdiag::io
