#pragma once

#include "hypertree/hyperbolicity.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hypertree {

// direct / denoised - 1; 0 when both losses vanish, +inf when only the
// denoised loss does.
double gain(double loss_direct, double loss_denoised);

struct DecoderRow {
  std::string decoder;
  std::optional<double> loss_direct;
  std::optional<double> loss_denoised;
  std::size_t clamped_direct = 0;
  std::size_t clamped_denoised = 0;
  std::string error;  // set when the decoder failed on either matrix

  std::optional<double> gain() const;
};

struct RunReport {
  std::string dataset;
  std::size_t n = 0;
  double delta_input = 0.0;
  double delta_denoised = 0.0;
  DeltaMethod delta_method = DeltaMethod::exact;
  std::uint64_t delta_samples = 0;
  std::uint64_t delta_seed = 0;
  double encoder_loss = 0.0;
  double scaling_factor = 1.0;
  double curvature = 0.0;
  std::uint64_t encoder_seed = 0;
  std::vector<DecoderRow> decoders;
  // Wall-clock seconds per stage. Kept out of report.txt so reruns stay
  // byte-identical.
  std::map<std::string, double> wall_seconds;
};

// One "key = value" line per metric.
std::string format_report(const RunReport& r);

// Fixed-width decoder table for terminals.
std::string format_summary_table(const RunReport& r);

// Parses "key = value" lines; '#' starts a comment line.
std::map<std::string, std::string> parse_key_values(std::string_view text);

}  // namespace hypertree
