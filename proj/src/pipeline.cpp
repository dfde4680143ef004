#include "hypertree/pipeline.hpp"

#include "hypertree/costs.hpp"
#include "hypertree/errors.hpp"
#include "hypertree/io.hpp"
#include "hypertree/neighbor_joining.hpp"

#include <chrono>

namespace hypertree {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

DeltaMode parse_delta_mode(std::string_view name) {
  if (name == "auto") return DeltaMode::automatic;
  if (name == "exact") return DeltaMode::exact;
  if (name == "sampled") return DeltaMode::sampled;
  throw ArgumentError("unknown delta mode '" + std::string(name) + "' (expected auto, exact or sampled)");
}

HyperbolicityReport measure_delta(const DistanceMatrix& d, const DeltaOptions& opts) {
  const bool exact = opts.mode == DeltaMode::exact ||
                     (opts.mode == DeltaMode::automatic && d.size() <= opts.exact_limit);
  return exact ? delta_exact(d) : delta_sampled(d, opts.samples, opts.seed);
}

std::vector<std::string> default_decoders() { return {"nj", "single", "complete", "average", "weighted"}; }

void check_decoder_names(const std::vector<std::string>& names) {
  if (names.empty()) throw ArgumentError("no decoder named");
  for (const std::string& name : names)
    if (name != "nj") parse_linkage_method(name);
}

DecodeOutput run_decoder(const DistanceMatrix& d, const std::string& decoder) {
  if (decoder == "nj") {
    NeighborJoiningResult nj = neighbor_joining(d);
    WeightedTree rooted = midpoint_root(nj.tree);
    DistanceMatrix fitted = leaf_distance_matrix(rooted).reordered(d.labels());
    return DecodeOutput{std::move(rooted), std::move(fitted), std::nullopt, nj.clamped_edges};
  }
  Dendrogram dend = linkage(d, parse_linkage_method(decoder));
  WeightedTree tree = dendrogram_to_tree(dend);
  DistanceMatrix fitted = dendrogram_to_ultrametric(dend);
  return DecodeOutput{std::move(tree), std::move(fitted), std::move(dend), 0};
}

PipelineResult run_pipeline(const DistanceMatrix& input, const std::string& dataset,
                            const PipelineOptions& opts) {
  check_decoder_names(opts.decoders);
  if (input.size() < 2) throw ArgumentError("pipeline needs at least two entities");

  RunReport report;
  report.dataset = dataset;
  report.n = input.size();
  report.curvature = opts.encoder.curvature;
  report.encoder_seed = opts.encoder.seed;

  auto t0 = std::chrono::steady_clock::now();
  const HyperbolicityReport delta_in = measure_delta(input, opts.delta);
  report.delta_input = delta_in.delta;
  report.delta_method = delta_in.method;
  report.delta_samples = delta_in.method == DeltaMethod::sampled ? opts.delta.samples : 0;
  report.delta_seed = opts.delta.seed;
  report.wall_seconds["delta_input"] = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  EmbeddingResult embedding = train_embedding(input, opts.encoder);
  report.wall_seconds["encoder"] = seconds_since(t0);
  report.encoder_loss = embedding.final_loss;
  report.scaling_factor = embedding.scaling_factor;
  DistanceMatrix denoised = denoised_metric(embedding);

  t0 = std::chrono::steady_clock::now();
  report.delta_denoised = measure_delta(denoised, opts.delta).delta;
  report.wall_seconds["delta_denoised"] = seconds_since(t0);

  std::vector<DecoderTrees> trees;
  for (const std::string& name : opts.decoders) {
    t0 = std::chrono::steady_clock::now();
    DecoderRow row;
    row.decoder = name;
    DecoderTrees out;
    out.decoder = name;
    try {
      out.direct = run_decoder(input, name);
      row.loss_direct = lp_cost(out.direct->fitted, input, opts.eval_p);
      row.clamped_direct = out.direct->clamped_edges;
      out.denoised = run_decoder(denoised, name);
      row.loss_denoised = lp_cost(out.denoised->fitted, input, opts.eval_p);
      row.clamped_denoised = out.denoised->clamped_edges;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    report.decoders.push_back(std::move(row));
    trees.push_back(std::move(out));
    report.wall_seconds["decoder." + name] = seconds_since(t0);
  }
  return PipelineResult{std::move(report), std::move(embedding), std::move(denoised), std::move(trees)};
}

std::string tree_file_name(const std::string& decoder, const std::string& variant) {
  return variant.empty() ? decoder + ".nwk" : decoder + "." + variant + ".nwk";
}

void write_pipeline_outputs(const PipelineResult& result, const std::filesystem::path& dir) {
  write_text_file(dir / "report.txt", format_report(result.report));
  save_embedding(dir / "embedding.tsv", result.embedding);
  save_loss_trace(dir / "loss_trace.tsv", result.embedding.loss_trace);
  save_matrix(dir / "denoised.tsv", result.denoised);
  for (const DecoderTrees& t : result.trees) {
    if (t.direct) save_newick(dir / "trees" / tree_file_name(t.decoder, "direct"), t.direct->tree);
    if (t.denoised) save_newick(dir / "trees" / tree_file_name(t.decoder, "denoised"), t.denoised->tree);
  }
}

}  // namespace hypertree
