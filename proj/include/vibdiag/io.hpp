#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>

#include "vibdiag/signal.hpp"

namespace vibdiag::io {

enum class SignalFormat { Csv, Wav };

/// "csv" / "wav" (case-insensitive). Throws Configuration otherwise.
SignalFormat parse_format(std::string_view name);
/// Guess from the file extension; .wav is WAV, anything else CSV.
SignalFormat format_from_path(const std::filesystem::path& path);

/// CSV: one numeric column, optional non-numeric header on the first line,
/// blank lines ignored. The sample rate is mandatory (Configuration error
/// when absent). WAV: PCM 16/24/32-bit or IEEE float, one channel selected,
/// rate from the header; integer PCM is scaled to [-1, 1).
Signal read_signal(const std::filesystem::path& path, SignalFormat format, int channel = 0,
                   std::optional<double> rate_hz = std::nullopt);

Signal parse_csv(std::istream& in, double rate_hz);
Signal parse_wav(std::span<const std::byte> bytes, int channel);

/// Single "amplitude" column, 17 significant digits.
void write_signal_csv(const std::filesystem::path& path, const Signal& s);

}  // namespace vibdiag::io
