// hypertree command line: synthesis, denoising, decoding, evaluation and the
// two experiment drivers.

#include "hypertree/costs.hpp"
#include "hypertree/datagen.hpp"
#include "hypertree/errors.hpp"
#include "hypertree/io.hpp"
#include "hypertree/newick.hpp"
#include "hypertree/objective_study.hpp"
#include "hypertree/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace hypertree;

namespace {

struct Options {
  std::string input;
  std::string features;
  std::string output_dir = ".";
  std::uint64_t seed = 0;

  double curvature = 100.0;
  long dim = 2;
  double p = 2.0;
  std::size_t epochs = 500;
  std::size_t burnin_epochs = 50;
  double learning_rate = 1e-3;
  double burnin_factor = 10.0;
  double scaling_factor = 0.0;  // 0 = automatic
  std::size_t pairs_per_step = 0;

  std::string decoders = "nj,single,complete,average,weighted";
  std::string delta_mode = "auto";
  std::uint64_t delta_samples = 1'000'000;

  std::size_t n = 64;
  double noise_ratio = 0.1;
  std::size_t trials = 20;
  std::size_t pool_size = 1000;
  bool include_truth = false;

  std::string tree;
  std::string cost = "lp";
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    out.push_back(item.substr(a, item.find_last_not_of(" \t") - a + 1));
  }
  return out;
}

EncoderConfig encoder_config(const Options& o) {
  EncoderConfig cfg;
  cfg.dimension = o.dim;
  cfg.curvature = o.curvature;
  cfg.p = o.p;
  cfg.total_epochs = o.epochs;
  cfg.burnin_epochs = o.burnin_epochs;
  cfg.learning_rate = o.learning_rate;
  cfg.burnin_factor = o.burnin_factor;
  if (o.scaling_factor > 0.0) cfg.scaling_factor = o.scaling_factor;
  cfg.pairs_per_step = o.pairs_per_step;
  cfg.seed = o.seed;
  cfg.validate();
  return cfg;
}

DeltaOptions delta_options(const Options& o) {
  DeltaOptions d;
  d.mode = parse_delta_mode(o.delta_mode);
  d.samples = o.delta_samples;
  d.seed = o.seed;
  return d;
}

// Matrix from --input, or 1 - cosine dissimilarity of the --features table.
std::pair<DistanceMatrix, std::string> load_input(const Options& o) {
  if (!o.input.empty() && !o.features.empty()) throw ArgumentError("give either --input or --features, not both");
  if (!o.features.empty()) return {cosine_dissimilarity(load_features(o.features)), fs::path(o.features).stem().string()};
  if (o.input.empty()) throw ArgumentError("missing --input");
  return {load_matrix(o.input), fs::path(o.input).stem().string()};
}

int cmd_synth(const Options& o) {
  const fs::path dir = o.output_dir;
  const WeightedTree tree = random_binary_tree(o.n, o.seed);
  const NoisyGraph graph = add_noise_edges(tree, o.noise_ratio, o.seed);
  const DistanceMatrix d = graph_leaf_shortest_paths(graph);
  save_newick(dir / "tree.nwk", tree);
  save_graph(dir / "graph.tsv", graph);
  save_matrix(dir / "matrix.tsv", d);
  std::cout << "n = " << o.n << "\nnoise_edges = " << graph.noise_edge_count() << "\nseed = " << o.seed << '\n';
  return 0;
}

int cmd_denoise(const Options& o) {
  const auto [d, name] = load_input(o);
  const EmbeddingResult r = train_embedding(d, encoder_config(o));
  const fs::path dir = o.output_dir;
  save_embedding(dir / "embedding.tsv", r);
  save_loss_trace(dir / "loss_trace.tsv", r.loss_trace);
  save_matrix(dir / "denoised.tsv", denoised_metric(r));
  std::cout << "dataset = " << name << "\nscaling_factor = " << format_double(r.scaling_factor)
            << "\nencoder_loss = " << format_double(r.final_loss) << '\n';
  return 0;
}

int cmd_decode(const Options& o) {
  const auto decoders = split_list(o.decoders);
  check_decoder_names(decoders);
  const auto [d, name] = load_input(o);
  const fs::path dir = o.output_dir;
  for (const std::string& dec : decoders) {
    const DecodeOutput out = run_decoder(d, dec);
    save_newick(dir / tree_file_name(dec), out.tree);
    if (out.dendrogram) save_dendrogram(dir / (dec + ".dendrogram.tsv"), *out.dendrogram);
    std::cout << "decoder." << dec << ".clamped = " << out.clamped_edges << '\n';
  }
  return 0;
}

int cmd_eval(const Options& o) {
  if (o.tree.empty()) throw ArgumentError("missing --tree");
  const auto [d, name] = load_input(o);
  const WeightedTree t = load_newick(o.tree);
  if (o.cost == "lp") {
    std::cout << "loss = " << format_double(lp_cost(leaf_distance_matrix(t), d, o.p)) << '\n';
  } else if (o.cost == "dasgupta") {
    std::cout << "dasgupta_cost = " << format_double(dasgupta_cost(t, d)) << '\n';
  } else {
    throw ArgumentError("unknown cost '" + o.cost + "' (expected lp or dasgupta)");
  }
  return 0;
}

int cmd_delta(const Options& o) {
  const auto [d, name] = load_input(o);
  const HyperbolicityReport r = measure_delta(d, delta_options(o));
  std::cout << "delta = " << format_double(r.delta) << "\nmethod = " << to_string(r.method)
            << "\nquadruples = " << r.quadruples_evaluated << '\n';
  if (r.seed) std::cout << "seed = " << *r.seed << '\n';
  return 0;
}

int cmd_pipeline(const Options& o) {
  PipelineOptions opts;
  opts.decoders = split_list(o.decoders);
  check_decoder_names(opts.decoders);
  opts.encoder = encoder_config(o);
  opts.delta = delta_options(o);
  const auto [d, name] = load_input(o);
  const PipelineResult result = run_pipeline(d, name, opts);
  write_pipeline_outputs(result, o.output_dir);
  std::cout << format_report(result.report);
  std::cerr << format_summary_table(result.report);
  for (const auto& [stage, s] : result.report.wall_seconds) std::cerr << "time." << stage << " = " << s << "s\n";
  return 0;
}

int cmd_compare_objectives(const Options& o) {
  ObjectiveStudyOptions opts;
  opts.n = o.n;
  opts.trials = o.trials;
  opts.pool_size = o.pool_size;
  opts.seed = o.seed;
  opts.include_truth = o.include_truth;
  const ObjectiveStudyResult r = compare_objectives(opts);
  const fs::path dir = o.output_dir;
  write_text_file(dir / "objective_summary.txt", format_objective_summary(r));
  write_text_file(dir / "objective_rows.tsv", format_objective_rows(r));
  std::cout << format_objective_summary(r);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic denoising of dissimilarities and tree decoding"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key = value file mirroring the long flag names");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Options o;
  app.add_option("--input", o.input, "Distance matrix file");
  app.add_option("--features", o.features, "Feature table, converted by 1 - cosine similarity");
  app.add_option("--output-dir", o.output_dir, "Directory for output files")->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--curvature", o.curvature, "Ball curvature magnitude c")->capture_default_str();
  app.add_option("--dim", o.dim, "Embedding dimension")->capture_default_str();
  app.add_option("--p", o.p, "Exponent of the lp loss")->capture_default_str();
  app.add_option("--epochs", o.epochs, "Total training epochs")->capture_default_str();
  app.add_option("--burnin-epochs", o.burnin_epochs, "Epochs at the initial learning rate")->capture_default_str();
  app.add_option("--learning-rate", o.learning_rate, "Burn-in learning rate")->capture_default_str();
  app.add_option("--burnin-factor", o.burnin_factor, "Learning rate multiplier after burn-in")->capture_default_str();
  app.add_option("--scaling-factor", o.scaling_factor, "Input multiplier (0 = automatic)")->capture_default_str();
  app.add_option("--pairs-per-step", o.pairs_per_step, "Sampled partners per leaf and step (0 = all)")
      ->capture_default_str();
  app.add_option("--decoders", o.decoders, "Comma list of nj, single, complete, average, weighted")
      ->capture_default_str();
  app.add_option("--delta-mode", o.delta_mode, "auto, exact or sampled")->capture_default_str();
  app.add_option("--delta-samples", o.delta_samples, "Quadruples for sampled delta")->capture_default_str();
  app.add_option("--n", o.n, "Leaf count")->capture_default_str();
  app.add_option("--noise-ratio", o.noise_ratio, "Noise edges per tree edge")->capture_default_str();
  app.add_option("--trials", o.trials, "Ground-truth trees")->capture_default_str();
  app.add_option("--pool-size", o.pool_size, "Candidate topologies")->capture_default_str();
  app.add_flag("--include-truth", o.include_truth, "Add the ground truth to the candidate pool");
  app.add_option("--tree", o.tree, "Newick tree file");
  app.add_option("--cost", o.cost, "lp or dasgupta")->capture_default_str();

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Command commands[] = {
      {"synth", "Random binary tree with noise edges and its leaf distance matrix", cmd_synth},
      {"denoise", "Fit a Poincare embedding and write the denoised matrix", cmd_denoise},
      {"decode", "Build trees with the chosen decoders", cmd_decode},
      {"eval", "Score a tree against a matrix", cmd_eval},
      {"delta", "Gromov delta of a matrix", cmd_delta},
      {"pipeline", "Delta, denoising and decoding with a run report", cmd_pipeline},
      {"compare-objectives", "Tree recovery under the l2 and Dasgupta costs", cmd_compare_objectives},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const Command& c : commands) subs.emplace_back(app.add_subcommand(c.name, c.help)->fallthrough(), &c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    try {
      return cmd->run(o);
    } catch (const ArgumentError& e) {
      std::cerr << "error: " << e.what() << "\n\n" << app.help();
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 1;
}
