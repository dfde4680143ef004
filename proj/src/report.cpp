#include "hypertree/report.hpp"

#include "hypertree/newick.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hypertree {

double gain(double loss_direct, double loss_denoised) {
  if (loss_denoised == 0.0) return loss_direct == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return loss_direct / loss_denoised - 1.0;
}

std::optional<double> DecoderRow::gain() const {
  if (!loss_direct || !loss_denoised) return std::nullopt;
  return hypertree::gain(*loss_direct, *loss_denoised);
}

namespace {

std::string number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

std::string fixed(double v, int decimals) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string format_report(const RunReport& r) {
  std::ostringstream out;
  out << "dataset = " << r.dataset << '\n'
      << "n = " << r.n << '\n'
      << "delta_method = " << to_string(r.delta_method) << '\n'
      << "delta_samples = " << r.delta_samples << '\n'
      << "delta_seed = " << r.delta_seed << '\n'
      << "delta_input = " << number(r.delta_input) << '\n'
      << "delta_denoised = " << number(r.delta_denoised) << '\n'
      << "curvature = " << number(r.curvature) << '\n'
      << "scaling_factor = " << number(r.scaling_factor) << '\n'
      << "encoder_seed = " << r.encoder_seed << '\n'
      << "encoder_loss = " << number(r.encoder_loss) << '\n';
  for (const DecoderRow& row : r.decoders) {
    const std::string key = "decoder." + row.decoder + ".";
    if (row.loss_direct) out << key << "loss_direct = " << number(*row.loss_direct) << '\n';
    if (row.loss_denoised) out << key << "loss_denoised = " << number(*row.loss_denoised) << '\n';
    if (auto g = row.gain()) out << key << "gain = " << number(*g) << '\n';
    out << key << "clamped_direct = " << row.clamped_direct << '\n'
        << key << "clamped_denoised = " << row.clamped_denoised << '\n';
    if (!row.error.empty()) out << key << "error = " << row.error << '\n';
  }
  return out.str();
}

std::string format_summary_table(const RunReport& r) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-10s %14s %14s %10s\n", "decoder", "direct", "denoised", "gain(%)");
  out << line;
  for (const DecoderRow& row : r.decoders) {
    if (!row.error.empty()) {
      std::snprintf(line, sizeof(line), "%-10s failed: %s\n", row.decoder.c_str(), row.error.c_str());
    } else {
      std::snprintf(line, sizeof(line), "%-10s %14s %14s %10s\n", row.decoder.c_str(),
                    fixed(*row.loss_direct, 4).c_str(), fixed(*row.loss_denoised, 4).c_str(),
                    fixed(100.0 * *row.gain(), 2).c_str());
    }
    out << line;
  }
  std::snprintf(line, sizeof(line), "delta %s: input %s, denoised %s; encoder loss %s\n",
                to_string(r.delta_method).c_str(), fixed(r.delta_input, 4).c_str(),
                fixed(r.delta_denoised, 4).c_str(), fixed(r.encoder_loss, 4).c_str());
  out << line;
  return out.str();
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) continue;
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

}  // namespace hypertree
