// vibdiag command-line front end. Talks to the library through the C API only.
#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "vibdiag/vibdiag.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;

struct SignalDeleter {
  void operator()(vd_signal* s) const { vd_signal_destroy(s); }
};
struct ConfigDeleter {
  void operator()(vd_config* c) const { vd_config_destroy(c); }
};
struct ReportDeleter {
  void operator()(vd_report* r) const { vd_report_destroy(r); }
};
struct KurtogramDeleter {
  void operator()(vd_kurtogram* k) const { vd_kurtogram_destroy(k); }
};
using SignalPtr = std::unique_ptr<vd_signal, SignalDeleter>;
using ConfigPtr = std::unique_ptr<vd_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<vd_report, ReportDeleter>;
using KurtogramPtr = std::unique_ptr<vd_kurtogram, KurtogramDeleter>;

// Thrown after the message has been printed; carries the exit code.
struct Exit {
  int code;
};

void check(vd_status status) {
  if (status == VD_OK) return;
  std::fprintf(stderr, "vibdiag: %s: %s\n", vd_status_string(status), vd_last_error());
  throw Exit{vd_status_exit_code(status)};
}

[[noreturn]] void config_error(const std::string& message) {
  std::fprintf(stderr, "vibdiag: configuration error: %s\n", message.c_str());
  throw Exit{kExitConfig};
}

bool is_csv(const std::string& path, const std::optional<std::string>& format) {
  if (format) return *format == "csv";
  auto ext = fs::path(path).extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext != ".wav";
}

struct InputOptions {
  std::string path;
  std::optional<double> rate;
  std::optional<std::string> format;
  int channel = 0;

  void add_to(CLI::App* cmd, bool required = true) {
    auto* in = cmd->add_option("--input,-i", path, "Record to analyse (.csv or .wav)");
    if (required) in->required();
    cmd->add_option("--rate,-r", rate, "Sample rate in Hz (required for CSV)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--format", format, "Input format, overrides the extension")
        ->check(CLI::IsMember({"csv", "wav"}));
    cmd->add_option("--channel", channel, "WAV channel index")->check(CLI::NonNegativeNumber);
  }

  SignalPtr read() const {
    if (!rate && is_csv(path, format)) config_error("--rate is required for CSV input");
    vd_signal* raw = nullptr;
    check(vd_signal_read(path.c_str(), format ? format->c_str() : nullptr, channel,
                         rate.value_or(0.0), &raw));
    return SignalPtr(raw);
  }
};

void print_number(const char* label, double value) { std::printf("%-22s %.6g\n", label, value); }

int run_diagnose(const InputOptions& input, const std::optional<double>& fault_freq,
                 const std::optional<std::string>& config_path,
                 const std::optional<std::uint64_t>& seed,
                 const std::optional<std::string>& out_dir) {
  vd_config* raw_cfg = nullptr;
  check(vd_config_create(&raw_cfg));
  ConfigPtr cfg(raw_cfg);
  if (config_path) check(vd_config_load(cfg.get(), config_path->c_str()));

  // Command-line flags override the file.
  if (!input.path.empty()) check(vd_config_set_string(cfg.get(), "input", input.path.c_str()));
  if (input.rate) check(vd_config_set_number(cfg.get(), "rate_hz", *input.rate));
  if (input.format) check(vd_config_set_string(cfg.get(), "format", input.format->c_str()));
  if (input.channel != 0) check(vd_config_set_integer(cfg.get(), "channel", input.channel));
  if (fault_freq) check(vd_config_set_number(cfg.get(), "fault_freq_hz", *fault_freq));
  if (seed) check(vd_config_set_integer(cfg.get(), "seed", static_cast<std::int64_t>(*seed)));
  if (out_dir) check(vd_config_set_string(cfg.get(), "out_dir", out_dir->c_str()));

  const char* path = nullptr;
  if (vd_config_get_string(cfg.get(), "input", &path) != VD_OK) {
    config_error("--input is required (flag or config \"input\")");
  }
  const std::string input_path = path;
  std::optional<std::string> format;
  if (vd_config_get_string(cfg.get(), "format", &path) == VD_OK) format = path;
  double number = 0.0;
  if (vd_config_get_number(cfg.get(), "rate_hz", &number) != VD_OK &&
      is_csv(input_path, format)) {
    config_error("--rate is required for CSV input");
  }
  if (vd_config_get_number(cfg.get(), "fault_freq_hz", &number) != VD_OK) {
    config_error("--fault-freq is required (flag or config \"fault_freq_hz\")");
  }
  if (vd_config_get_string(cfg.get(), "out_dir", &path) != VD_OK) {
    config_error("--out is required (flag or config \"out_dir\")");
  }
  const std::string out = path;

  vd_signal* raw_sig = nullptr;
  check(vd_config_read_input(cfg.get(), &raw_sig));
  SignalPtr signal(raw_sig);

  vd_report* raw_report = nullptr;
  check(vd_diagnose(signal.get(), cfg.get(), &raw_report));
  ReportPtr report(raw_report);
  check(vd_report_write(report.get(), out.c_str()));

  vd_report_summary s{};
  check(vd_report_summary_get(report.get(), &s));
  print_number("center_freq_hz", s.center_freq_hz);
  print_number("bandwidth_hz", s.bandwidth_hz);
  print_number("best_ck", s.best_ck);
  print_number("period_samples", s.final_period_samples);
  print_number("fault_freq_hz", s.fault_freq_hz);
  print_number("kurtosis_raw", s.kurtosis_raw);
  print_number("kurtosis_processed", s.kurtosis_processed);
  print_number("envsi_raw", s.envsi_raw);
  print_number("envsi_processed", s.envsi_processed);
  std::printf("%-22s %zu\n", "harmonics_detected", s.harmonic_count);
  std::printf("report written to %s\n", out.c_str());
  return 0;
}

int run_kurtogram(const InputOptions& input, int max_level, const std::string& out,
                  const std::optional<double>& fault_freq) {
  SignalPtr signal = input.read();
  vd_kurtogram* raw = nullptr;
  check(vd_kurtogram_compute(signal.get(), max_level, &raw));
  KurtogramPtr k(raw);
  check(vd_kurtogram_write(k.get(), out.c_str(), fault_freq.value_or(0.0)));
  double center = 0.0, bandwidth = 0.0, kurt = 0.0, level = 0.0;
  check(vd_kurtogram_best(k.get(), &center, &bandwidth, &kurt, &level));
  print_number("best_level", level);
  print_number("center_freq_hz", center);
  print_number("bandwidth_hz", bandwidth);
  print_number("kurtosis", kurt);
  std::printf("kurtogram written to %s\n", out.c_str());
  return 0;
}

int run_synth(const std::string& preset, const std::optional<double>& snr_db,
              std::uint64_t seed, const std::string& out) {
  vd_signal* raw = nullptr;
  vd_synth_truth truth{};
  check(vd_synth_preset(preset.c_str(), snr_db.has_value(), snr_db.value_or(0.0), seed, &raw,
                        &truth));
  SignalPtr signal(raw);
  const fs::path out_path(out);
  if (out_path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(out_path.parent_path(), ec);
  }
  check(vd_signal_write_csv(signal.get(), out.c_str()));
  const auto truth_path = (out_path.parent_path() / "truth.json").string();
  check(vd_synth_write_truth(preset.c_str(), snr_db.has_value(), snr_db.value_or(0.0), seed,
                             truth_path.c_str()));
  print_number("sample_rate_hz", truth.sample_rate_hz);
  print_number("fault_freq_hz", truth.fault_freq_hz);
  print_number("resonance_hz", truth.resonance_hz);
  print_number("snr_db", truth.noise_snr_db);
  std::printf("%-22s %zu\n", "samples", vd_signal_length(signal.get()));
  return 0;
}

int run_ck(const InputOptions& input, double period, int shift_order) {
  SignalPtr signal = input.read();
  double value = 0.0;
  check(vd_correlated_kurtosis(vd_signal_data(signal.get()), vd_signal_length(signal.get()),
                               period, shift_order, &value));
  std::printf("%.17g\n", value);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vibration fault diagnosis: optimized Morlet filtering, kurtogram, synthesis"};
  app.set_version_flag("--version", std::string(vd_version()));
  app.require_subcommand(1);

  InputOptions diag_in;
  std::optional<double> diag_fault;
  std::optional<std::string> diag_config, diag_out;
  std::optional<std::uint64_t> diag_seed;
  auto* diagnose = app.add_subcommand("diagnose", "Optimize a Morlet filter and report the SES");
  diag_in.add_to(diagnose, false);
  diagnose->add_option("--fault-freq,-f", diag_fault, "Expected fault frequency in Hz")
      ->check(CLI::PositiveNumber);
  diagnose->add_option("--config,-c", diag_config, "JSON run configuration")
      ->check(CLI::ExistingFile);
  diagnose->add_option("--seed,-s", diag_seed, "Optimizer seed");
  diagnose->add_option("--out,-o", diag_out, "Output directory");

  InputOptions kurt_in;
  int max_level = 7;
  std::string kurt_out;
  std::optional<double> kurt_fault;
  auto* kurtogram = app.add_subcommand("kurtogram", "Fast-kurtogram band selection baseline");
  kurt_in.add_to(kurtogram);
  kurtogram->add_option("--max-level,-l", max_level, "Decomposition depth")
      ->capture_default_str();
  kurtogram->add_option("--out,-o", kurt_out, "Output directory")->required();
  kurtogram->add_option("--fault-freq,-f", kurt_fault, "Mark fault harmonics on the SES")
      ->check(CLI::PositiveNumber);

  std::string preset;
  std::optional<double> snr_db;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic fault record");
  synth->add_option("--preset,-p", preset, "conveyor-bearing or conveyor-gearbox")->required();
  synth->add_option("--snr-db", snr_db, "Signal-to-noise ratio in dB");
  synth->add_option("--seed,-s", synth_seed, "Random seed")->capture_default_str();
  synth->add_option("--out,-o", synth_out, "Output CSV; truth.json goes next to it")
      ->required();

  InputOptions ck_in;
  double period = 0.0;
  int shift_order = 1;
  auto* ck = app.add_subcommand("ck", "Print the correlated kurtosis of a record");
  ck_in.add_to(ck);
  ck->add_option("--period-samples,-t", period, "Fault period in samples")->required();
  ck->add_option("--shift-order,-m", shift_order, "Shift order M")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*diagnose) return run_diagnose(diag_in, diag_fault, diag_config, diag_seed, diag_out);
    if (*kurtogram) return run_kurtogram(kurt_in, max_level, kurt_out, kurt_fault);
    if (*synth) return run_synth(preset, snr_db, synth_seed, synth_out);
    if (*ck) return run_ck(ck_in, period, shift_order);
  } catch (const Exit& e) {
    return e.code;
  }
  return 0;
}
