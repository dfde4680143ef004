#include "hypertree/io.hpp"

#include "hypertree/errors.hpp"
#include "hypertree/newick.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace hypertree {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(std::string_view line) {
  const char sep = line.find('\t') != std::string_view::npos ? '\t' : ',';
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto end = line.find(sep, start);
    out.emplace_back(trim(line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

// Non-blank lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!trim(line).empty()) lines.emplace_back(number, line);
  }
  return lines;
}

[[noreturn]] void fail(const fs::path& path, std::size_t line, const std::string& what) {
  throw ParseError(path.string() + ":" + std::to_string(line) + ": " + what);
}

double parse_number(const fs::path& path, std::size_t line, std::size_t column, const std::string& field) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    fail(path, line, "column " + std::to_string(column + 1) + ": '" + field + "' is not a number");
  }
  if (std::isnan(v)) fail(path, line, "column " + std::to_string(column + 1) + ": NaN entry");
  return v;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path.string() + ": cannot open file for writing");
  return out;
}

}  // namespace

DistanceMatrix load_matrix(const fs::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) fail(path, 1, "empty matrix file");
  std::vector<std::string> labels = split_fields(lines[0].second);
  const std::size_t n = labels.size();
  if (lines.size() - 1 != n) {
    fail(path, lines.back().first, "expected " + std::to_string(n) + " matrix rows, found " +
                                       std::to_string(lines.size() - 1));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [number, text] = lines[i + 1];
    const auto fields = split_fields(text);
    if (fields.size() != n) {
      fail(path, number, "expected " + std::to_string(n) + " fields, found " + std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = parse_number(path, number, j, fields[j]);
      if (v < 0.0 || !std::isfinite(v)) {
        fail(path, number, "entry (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                               ") is negative or infinite");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      const double gap = std::abs(m(i, j) - m(j, i));
      if (gap > 1e-6) {
        fail(path, lines[static_cast<std::size_t>(i) + 1].first,
             "matrix is not symmetric at (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                 "): difference " + std::to_string(gap));
      }
      m(i, j) = m(j, i) = 0.5 * (m(i, j) + m(j, i));
    }
  }
  try {
    return DistanceMatrix(std::move(labels), std::move(m));
  } catch (const ArgumentError& e) {
    fail(path, lines[0].first, e.what());
  }
}

void save_matrix(const fs::path& path, const DistanceMatrix& d) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < d.size(); ++i) out << (i ? "\t" : "") << d.labels()[i];
  out << '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) out << (j ? "\t" : "") << format_double(d(i, j));
    out << '\n';
  }
}

FeatureTable load_features(const fs::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) fail(path, 1, "empty feature file");
  const auto header = split_fields(lines[0].second);
  if (header.size() < 2) fail(path, lines[0].first, "header needs a label column and at least one feature");
  FeatureTable table;
  table.feature_names.assign(header.begin() + 1, header.end());
  const std::size_t m = table.feature_names.size();
  table.features.resize(static_cast<Eigen::Index>(lines.size() - 1), static_cast<Eigen::Index>(m));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [number, text] = lines[i];
    const auto fields = split_fields(text);
    if (fields.size() != m + 1) {
      fail(path, number, "expected " + std::to_string(m + 1) + " fields, found " + std::to_string(fields.size()));
    }
    table.labels.push_back(fields[0]);
    for (std::size_t j = 0; j < m; ++j) {
      const double v = parse_number(path, number, j + 1, fields[j + 1]);
      if (!std::isfinite(v)) fail(path, number, "column " + std::to_string(j + 2) + ": infinite entry");
      table.features(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return table;
}

void save_features(const fs::path& path, const FeatureTable& f) {
  auto out = open_out(path);
  out << "label";
  for (const auto& name : f.feature_names) out << '\t' << name;
  out << '\n';
  for (Eigen::Index i = 0; i < f.features.rows(); ++i) {
    out << f.labels[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < f.features.cols(); ++j) out << '\t' << format_double(f.features(i, j));
    out << '\n';
  }
}

void save_embedding(const fs::path& path, const EmbeddingResult& result) {
  auto out = open_out(path);
  const PoincareEmbedding& pts = result.points;
  out << "# curvature=" << format_double(pts.curvature()) << " dim=" << pts.dimension()
      << " scaling_factor=" << format_double(result.scaling_factor) << '\n';
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << pts.labels()[i];
    for (Eigen::Index k = 0; k < pts.dimension(); ++k)
      out << '\t' << format_double(pts.coords()(static_cast<Eigen::Index>(i), k));
    out << '\n';
  }
}

void save_loss_trace(const fs::path& path, const std::vector<double>& trace) {
  auto out = open_out(path);
  out << "epoch\tloss\n";
  for (std::size_t e = 0; e < trace.size(); ++e) out << e << '\t' << format_double(trace[e]) << '\n';
}

void save_dendrogram(const fs::path& path, const Dendrogram& dend) {
  auto out = open_out(path);
  out << "merge\ta\tb\theight\tsize\n";
  for (std::size_t k = 0; k < dend.merges.size(); ++k) {
    const Merge& mg = dend.merges[k];
    out << k << '\t' << mg.a << '\t' << mg.b << '\t' << format_double(mg.height) << '\t' << mg.size << '\n';
  }
}

void save_graph(const fs::path& path, const NoisyGraph& g) {
  auto out = open_out(path);
  out << "u\tv\tweight\tkind\n";
  for (const GraphEdge& e : g.edges)
    out << e.u << '\t' << e.v << '\t' << format_double(e.weight) << '\t' << (e.noise ? "noise" : "tree") << '\n';
}

WeightedTree load_newick(const fs::path& path) {
  try {
    return parse_newick(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_newick(const fs::path& path, const WeightedTree& t) { write_text_file(path, to_newick(t) + "\n"); }

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

}  // namespace hypertree
