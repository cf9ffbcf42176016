#pragma once

#include "omabench/bench_harness.hpp"
#include "omabench/oma_freq.hpp"
#include "omabench/oma_ssi.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace omabench {

/// Placeholder written for a mode that was not identified.
inline constexpr std::string_view kDash = "-";

/// Full report as JSON: resolved config, reference frequencies and every run.
std::string report_to_json(const BenchmarkReport& report);

/// Inverse of report_to_json. Beam cases are rebuilt from the embedded config.
BenchmarkReport report_from_json(std::string_view text);
BenchmarkReport load_report(const std::filesystem::path& path);

/**
 * Identified frequencies of one beam, one row per (level, method) taken from
 * the worst-case run of that level. Leading row holds the FE reference.
 * Header: noise_level,snr_db,worst_run,method,mode_1..mode_n
 */
std::string frequency_table_csv(const BenchmarkReport& report, SupportCondition beam);

/**
 * MAC statistics over all runs of one beam.
 * Header: noise_level,snr_db,method,mode,min,mean,std,max,identified,runs,worst_run_mac
 */
std::string mac_table_csv(const BenchmarkReport& report, SupportCondition beam);

/**
 * Relative frequency error averaged over the levels where the worst-case run identified the mode.
 * Header: beam,method,mode,reference_hz,mean_error_percent,levels_identified,levels
 */
std::string error_table_csv(const BenchmarkReport& report);

/// Header: frequency_hz,value. Only lines inside [band_lo_hz, band_hi_hz].
std::string anpsd_csv(const Anpsd& spectrum, double band_lo_hz, double band_hi_hz);

/// Reference and identified shapes of one mode at one level (worst-case run). Header: channel,node,reference,<methods>
std::string modeshape_csv(const BenchmarkReport& report, SupportCondition beam, int mode, double noise_level);

/// Header: order,frequency_hz,damping,stable_f,stable_d,stable_mac
std::string stabilization_csv(const StabilizationDiagram& diagram);

/// First singular value per line. Header: frequency_hz,value
std::string singular_values_csv(const SingularValueCurves& curves);

/// Pairing of one identification against the reference. Header: mode,reference_hz,frequency_hz,error_percent,mac,damping
std::string identified_modes_csv(const MethodResult& result, const ModalSolution& reference,
                                 const IdentifiedModeSet& identified);

/**
 * Write every campaign output into `dir`: report.json, campaign_resolved.json,
 * table_freq_<beam>.csv, table_mac_<beam>.csv, table_err.csv,
 * anpsd_<beam>_<NL>.csv and modeshape_<beam>_<mode>_<NL>.csv.
 */
void write_outputs(const BenchmarkReport& report, const std::filesystem::path& dir);

/// Tables only (everything above except report.json), for re-emission from a stored report.
void write_tables(const BenchmarkReport& report, const std::filesystem::path& dir);

/// Write `text` to `path`, throwing InvalidInput when the file cannot be opened.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace omabench
