#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "vibdiag/error.hpp"
#include "vibdiag/io.hpp"
#include "wav_writer.hpp"

using namespace vibdiag;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "vibdiag_io_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string csv_of(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += std::to_string(i * 0.5) + "\n";
  return s;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("CSV with and without header") {
  std::istringstream plain(csv_of(20));
  const auto a = io::parse_csv(plain, 100.0);
  CHECK(a.size() == 20);
  CHECK(a.samples()[3] == 1.5);
  std::istringstream headed("amplitude\n" + csv_of(20) + "\n\n");
  CHECK(io::parse_csv(headed, 100.0).size() == 20);
  std::istringstream crlf("x\r\n1\r\n2\r\n3\r\n4\r\n5\r\n6\r\n7\r\n8\r\n9\r\n10\r\n11\r\n12\r\n13\r\n14\r\n15\r\n16\r\n");
  CHECK(io::parse_csv(crlf, 1.0).size() == 16);
}

TEST_CASE("three-row CSV is too short") {
  std::istringstream in("0.0\n1.0\n-1.0\n");
  CHECK(kind_of([&] { io::parse_csv(in, 100.0); }) == ErrorKind::InvalidInput);
}

TEST_CASE("CSV with a non-numeric row names the line") {
  std::istringstream in("value\n" + csv_of(10) + "oops\n" + csv_of(10));
  try {
    io::parse_csv(in, 100.0);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("line 12") != std::string::npos);
  }
  std::istringstream nan_row(csv_of(10) + "nan\n" + csv_of(10));
  CHECK(kind_of([&] { io::parse_csv(nan_row, 100.0); }) == ErrorKind::Parse);
}

TEST_CASE("read_signal resolves rate, channel and missing files") {
  const auto path = scratch("plain.csv");
  std::ofstream(path) << csv_of(32);
  CHECK(io::read_signal(path, io::SignalFormat::Csv, 0, 250.0).sample_rate_hz() == 250.0);
  CHECK(kind_of([&] { io::read_signal(path, io::SignalFormat::Csv, 0); }) == ErrorKind::Configuration);
  CHECK(kind_of([&] { io::read_signal(path, io::SignalFormat::Csv, 1, 250.0); }) == ErrorKind::Configuration);
  CHECK(kind_of([&] { io::read_signal(scratch("absent.csv"), io::SignalFormat::Csv, 0, 1.0); }) == ErrorKind::Io);
  CHECK(io::format_from_path("x/Y.WAV") == io::SignalFormat::Wav);
  CHECK(io::format_from_path("x/y.txt") == io::SignalFormat::Csv);
  CHECK(kind_of([] { io::parse_format("flac"); }) == ErrorKind::Configuration);
}

TEST_CASE("16-bit full-scale sine scales to within one LSB of 1") {
  std::vector<std::int16_t> pcm(800);
  for (std::size_t i = 0; i < pcm.size(); ++i) {
    pcm[i] = static_cast<std::int16_t>(std::lround(32767.0 * std::sin(2 * std::numbers::pi * i / 80.0)));
  }
  pcm[20] = 32767;
  pcm[60] = -32768;
  const auto bytes = fixture::wav(1, 1, 8000, 16, fixture::pcm16(pcm));
  const auto s = io::parse_wav(bytes, 0);
  CHECK(s.sample_rate_hz() == 8000.0);
  CHECK(s.size() == 800);
  double peak = 0.0;
  for (double v : s.samples()) {
    CHECK(std::abs(v) <= 1.0);
    peak = std::max(peak, v);
  }
  CHECK(std::abs(peak - 1.0) <= 1.0 / 32768.0);
  CHECK(*std::min_element(s.samples().begin(), s.samples().end()) == -1.0);
}

TEST_CASE("WAV channel selection and float samples") {
  std::vector<float> inter;
  for (int i = 0; i < 32; ++i) {
    inter.push_back(0.25f * i / 32);
    inter.push_back(-0.5f);
  }
  const auto bytes = fixture::wav(3, 2, 1000, 32, fixture::float32(inter));
  const auto left = io::parse_wav(bytes, 0);
  const auto right = io::parse_wav(bytes, 1);
  CHECK(left.samples()[31] == doctest::Approx(0.25 * 31 / 32));
  CHECK(right.samples()[5] == -0.5);
  CHECK(kind_of([&] { io::parse_wav(bytes, 2); }) == ErrorKind::Configuration);
}

TEST_CASE("malformed WAV reports a byte offset") {
  auto bytes = fixture::wav(1, 1, 8000, 16, fixture::pcm16(std::vector<std::int16_t>(64, 0)));
  auto broken = bytes;
  std::memcpy(broken.data() + 8, "WAVX", 4);
  try {
    io::parse_wav(broken, 0);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("offset 8") != std::string::npos);
  }
  auto odd_bits = bytes;
  odd_bits[34] = std::byte{12};
  CHECK(kind_of([&] { io::parse_wav(odd_bits, 0); }) == ErrorKind::Parse);
  CHECK(kind_of([&] { io::parse_wav(std::span(bytes).first(10), 0); }) == ErrorKind::Parse);
}

TEST_CASE("CSV round trip is exact") {
  std::vector<double> x(40);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.1 * i) / 3.0;
  const Signal s(x, 123.0);
  const auto path = scratch("round.csv");
  io::write_signal_csv(path, s);
  const auto back = io::read_signal(path, io::SignalFormat::Csv, 0, 123.0);
  CHECK(std::equal(x.begin(), x.end(), back.samples().begin()));
}
