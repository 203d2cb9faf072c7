#include "vibdiag/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "vibdiag/envelope.hpp"
#include "vibdiag/error.hpp"
#include "vibdiag/svg.hpp"

namespace vibdiag::report {

namespace {

using nlohmann::json;

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no infinities; unbounded SNR values are written as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create directory '" + dir.string() + "': " + ec.message());
}

std::vector<double> time_axis(std::size_t n, double fs) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / fs;
  return t;
}

// SES plots show the band that holds the harmonic family.
std::size_t ses_plot_bins(const EnvelopeSpectrum& ses, double fault_freq_hz, int harmonics) {
  const double top = (harmonics + 1) * fault_freq_hz;
  return std::min(ses.size(), static_cast<std::size_t>(top / ses.resolution_hz()) + 1);
}

std::string ses_plot(const EnvelopeSpectrum& ses, const std::string& title,
                     double fault_freq_hz, int harmonics, std::vector<svg::Marker> markers) {
  const std::size_t bins = ses_plot_bins(ses, fault_freq_hz, harmonics);
  std::vector<double> f(bins);
  std::vector<double> m(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    f[k] = ses.frequency(k);
    m[k] = k == 0 ? 0.0 : ses.magnitudes()[k];
  }
  svg::PlotSpec spec{title, "Frequency (Hz)", "Magnitude", 900, 320, std::move(markers)};
  return svg::line_plot(spec, f, m);
}

}  // namespace

void write_text(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) fail(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

void write_ses_csv(const std::filesystem::path& path, const EnvelopeSpectrum& ses) {
  std::string body = "freq_hz,magnitude\n";
  body.reserve(ses.size() * 48);
  for (std::size_t k = 0; k < ses.size(); ++k) {
    body += g17(ses.frequency(k));
    body += ',';
    body += g17(ses.magnitudes()[k]);
    body += '\n';
  }
  write_text(path, body);
}

nlohmann::json diagnosis_json(const DiagnosisReport& r, const RunConfig& cfg, const Signal& s) {
  json j;
  j["schema"] = "vibdiag.diagnosis";
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = to_json(cfg);
  // The output location does not affect results; leaving it out keeps
  // reports from identical runs byte-identical wherever they are written.
  j["config"].erase("out_dir");
  j["signal"] = {{"sample_rate_hz", s.sample_rate_hz()},
                 {"length", s.size()},
                 {"duration_s", s.duration_s()}};
  j["optimal_filter"] = {{"center_freq_hz", r.optimal_params.center_freq_hz},
                         {"bandwidth_hz", r.optimal_params.bandwidth_hz},
                         {"band_low_hz", r.optimal_params.band_low_hz()},
                         {"band_high_hz", r.optimal_params.band_high_hz()}};
  j["period"] = {{"initial_samples", r.initial_period_samples},
                 {"final_samples", r.final_period_samples},
                 {"fault_freq_hz", r.fault_freq_hz},
                 {"updates", r.period_updates}};
  j["optimizer"] = {{"best_ck", r.best_ck},
                    {"ck_history", r.ck_history},
                    {"evaluations", r.evaluations}};
  j["metrics"] = {{"kurtosis_raw", r.kurtosis_raw},
                  {"kurtosis_processed", r.kurtosis_processed},
                  {"envsi_raw", r.envsi_raw},
                  {"envsi_processed", r.envsi_processed},
                  {"snr_raw_db", finite_or_null(r.snr_raw_db)},
                  {"snr_processed_db", finite_or_null(r.snr_processed_db)}};
  json harmonics = json::array();
  for (const auto& h : r.harmonics) {
    harmonics.push_back({{"order", h.order}, {"freq_hz", h.freq_hz}, {"magnitude", h.magnitude}});
  }
  j["harmonics"] = std::move(harmonics);
  j["ses"] = {{"resolution_hz", r.ses.resolution_hz()}, {"bins", r.ses.size()}};
  return j;
}

void write_diagnosis(const std::filesystem::path& dir, const DiagnosisReport& r,
                     const RunConfig& cfg, const Signal& s) {
  ensure_dir(dir);
  write_text(dir / "report.json", diagnosis_json(r, cfg, s).dump(2) + "\n");
  write_ses_csv(dir / "ses.csv", r.ses);
  write_ses_csv(dir / "ses_raw.csv", r.ses_raw);

  std::string processed = "time_s,amplitude\n";
  const double fs = s.sample_rate_hz();
  for (std::size_t i = 0; i < r.processed.size(); ++i) {
    processed += g17(static_cast<double>(i) / fs);
    processed += ',';
    processed += g17(r.processed[i]);
    processed += '\n';
  }
  write_text(dir / "processed.csv", processed);

  const auto t = time_axis(s.size(), fs);
  write_text(dir / "raw_waveform.svg",
             svg::line_plot({"Raw signal", "Time (s)", "Amplitude", 900, 320, {}}, t, s.samples()));
  write_text(dir / "processed_waveform.svg",
             svg::line_plot({"Processed signal (optimal Morlet band)", "Time (s)", "Amplitude", 900,
                             320, {}},
                            t, r.processed));

  const int harmonics = cfg.pipeline.envsi_harmonics;
  std::vector<svg::Marker> markers;
  for (const auto& h : r.harmonics) markers.push_back({h.freq_hz, std::to_string(h.order) + "x"});
  write_text(dir / "ses_raw.svg",
             ses_plot(r.ses_raw, "Squared envelope spectrum, raw", r.fault_freq_hz, harmonics, {}));
  write_text(dir / "ses.svg", ses_plot(r.ses, "Squared envelope spectrum, processed",
                                       r.fault_freq_hz, harmonics, std::move(markers)));
}

void write_kurtogram(const std::filesystem::path& dir, const KurtogramResult& k, const Signal& s,
                     std::optional<double> fault_freq_hz) {
  ensure_dir(dir);
  std::string map = "level,band,center_hz,bandwidth_hz,kurtosis\n";
  for (const auto& row : k.levels) {
    for (std::size_t b = 0; b < row.band_count; ++b) {
      map += g17(row.level) + ',' + std::to_string(b) + ',' + g17(row.band_center_hz(b)) + ',' +
             g17(row.bandwidth_hz) + ',' + g17(row.kurtosis[b]) + '\n';
    }
  }
  write_text(dir / "map.csv", map);

  const auto band = band_filter(s, k.best_center_hz, k.best_bandwidth_hz);
  const auto ses = squared_envelope_spectrum(band);
  write_ses_csv(dir / "ses.csv", ses);

  json j;
  j["schema"] = "vibdiag.kurtogram";
  j["schema_version"] = kReportSchemaVersion;
  j["signal"] = {{"sample_rate_hz", s.sample_rate_hz()}, {"length", s.size()}};
  j["max_level"] = k.levels.empty() ? 0.0 : k.levels.back().level;
  j["best_band"] = {{"level", k.levels[k.best_level_index].level},
                    {"band", k.best_band},
                    {"center_hz", k.best_center_hz},
                    {"bandwidth_hz", k.best_bandwidth_hz},
                    {"kurtosis", k.best_kurtosis}};
  const auto processed = band.real_part();
  double processed_kurtosis = 0.0;
  try {
    processed_kurtosis = kurtosis(processed);
  } catch (const Error&) {
  }
  j["metrics"] = {{"kurtosis_raw", kurtosis(s)}, {"kurtosis_processed", processed_kurtosis}};
  if (fault_freq_hz) {
    j["metrics"]["fault_freq_hz"] = *fault_freq_hz;
    j["metrics"]["envsi_processed"] = envsi(ses, *fault_freq_hz);
    j["metrics"]["snr_processed_db"] = finite_or_null(harmonic_snr(ses, *fault_freq_hz));
  }
  write_text(dir / "best_band.json", j.dump(2) + "\n");

  const auto t = time_axis(s.size(), s.sample_rate_hz());
  write_text(dir / "processed_waveform.svg",
             svg::line_plot({"Kurtogram best band", "Time (s)", "Amplitude", 900, 320, {}}, t,
                            processed));
  const double f_plot = fault_freq_hz.value_or(ses.max_frequency_hz() / 11.0);
  write_text(dir / "ses.svg",
             ses_plot(ses, "Squared envelope spectrum, kurtogram band", f_plot,
                      kDefaultEnvsiHarmonics, {}));
}

nlohmann::json truth_json(std::string_view preset, std::uint64_t seed,
                          const synth::FaultSignalSpec& spec, const synth::SynthTruth& truth) {
  json tones = json::array();
  for (const auto& t : spec.interference_tones) {
    tones.push_back({{"freq_hz", t.freq_hz}, {"amplitude", t.amplitude}});
  }
  return {{"schema", "vibdiag.synth_truth"},
          {"schema_version", kReportSchemaVersion},
          {"preset", std::string(preset)},
          {"seed", seed},
          {"sample_rate_hz", spec.sample_rate_hz},
          {"duration_s", spec.duration_s},
          {"fault_freq_hz", truth.fault_freq_hz},
          {"period_samples", truth.period_samples},
          {"resonance_hz", truth.resonance_hz},
          {"damping_ratio", spec.damping_ratio},
          {"impulse_amplitude", spec.impulse_amplitude},
          {"noise_snr_db", spec.noise_snr_db},
          {"jitter_frac", spec.jitter_frac},
          {"interference_tones", std::move(tones)},
          {"signal_power", truth.signal_power},
          {"noise_power", truth.noise_power},
          {"impacts", truth.impact_times_s.size()}};
}

}  // namespace vibdiag::report
