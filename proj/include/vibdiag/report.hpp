#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "vibdiag/kurtogram.hpp"
#include "vibdiag/pipeline.hpp"
#include "vibdiag/run_config.hpp"
#include "vibdiag/synth.hpp"

namespace vibdiag::report {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json diagnosis_json(const DiagnosisReport& r, const RunConfig& cfg, const Signal& s);

/// report.json, ses.csv, ses_raw.csv, processed.csv and SVG plots
/// (raw_waveform, processed_waveform, ses_raw, ses). Creates the directory.
void write_diagnosis(const std::filesystem::path& dir, const DiagnosisReport& r,
                     const RunConfig& cfg, const Signal& s);

/// map.csv, best_band.json, ses.csv (SES of the best band) and SVG plots
/// of the band output and its SES.
void write_kurtogram(const std::filesystem::path& dir, const KurtogramResult& k, const Signal& s,
                     std::optional<double> fault_freq_hz);

/// Header freq_hz,magnitude; 17 significant digits.
void write_ses_csv(const std::filesystem::path& path, const EnvelopeSpectrum& ses);

nlohmann::json truth_json(std::string_view preset, std::uint64_t seed,
                          const synth::FaultSignalSpec& spec, const synth::SynthTruth& truth);

void write_text(const std::filesystem::path& path, std::string_view content);

}  // namespace vibdiag::report
