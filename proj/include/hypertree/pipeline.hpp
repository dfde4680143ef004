#pragma once

#include "hypertree/denoise.hpp"
#include "hypertree/distance_matrix.hpp"
#include "hypertree/hyperbolicity.hpp"
#include "hypertree/linkage.hpp"
#include "hypertree/report.hpp"
#include "hypertree/tree.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hypertree {

enum class DeltaMode { automatic, exact, sampled };

// "auto", "exact" or "sampled".
DeltaMode parse_delta_mode(std::string_view name);

struct DeltaOptions {
  DeltaMode mode = DeltaMode::automatic;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t exact_limit = 300;  // automatic mode is exact up to this size
};

HyperbolicityReport measure_delta(const DistanceMatrix& d, const DeltaOptions& opts);

std::vector<std::string> default_decoders();

// Throws ArgumentError unless every name is nj or a linkage method.
void check_decoder_names(const std::vector<std::string>& names);

struct DecodeOutput {
  WeightedTree tree;         // midpoint-rooted for nj, dendrogram tree otherwise
  DistanceMatrix fitted;     // leaf matrix for nj, cophenetic matrix otherwise
  std::optional<Dendrogram> dendrogram;
  std::size_t clamped_edges = 0;
};

DecodeOutput run_decoder(const DistanceMatrix& d, const std::string& decoder);

struct PipelineOptions {
  EncoderConfig encoder;
  std::vector<std::string> decoders = default_decoders();
  DeltaOptions delta;
  double eval_p = 2.0;
};

struct DecoderTrees {
  std::string decoder;
  std::optional<DecodeOutput> direct;
  std::optional<DecodeOutput> denoised;
};

struct PipelineResult {
  RunReport report;
  EmbeddingResult embedding;
  DistanceMatrix denoised;
  std::vector<DecoderTrees> trees;
};

PipelineResult run_pipeline(const DistanceMatrix& input, const std::string& dataset,
                            const PipelineOptions& opts);

// File names used by the pipeline and by the single-stage commands.
std::string tree_file_name(const std::string& decoder, const std::string& variant = "");

// report.txt, embedding.tsv, loss_trace.tsv, denoised.tsv and
// trees/<decoder>.{direct,denoised}.nwk under `dir`.
void write_pipeline_outputs(const PipelineResult& result, const std::filesystem::path& dir);

}  // namespace hypertree
