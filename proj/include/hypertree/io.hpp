#pragma once

#include "hypertree/datagen.hpp"
#include "hypertree/denoise.hpp"
#include "hypertree/distance_matrix.hpp"
#include "hypertree/linkage.hpp"
#include "hypertree/tree.hpp"

#include <filesystem>
#include <string>

namespace hypertree {

// Matrix file: a label line, then n rows of n numbers, fields separated by
// tabs or commas. Asymmetry above 1e-6 is an error; smaller asymmetry is
// averaged away and the diagonal is forced to zero. Errors name the file and
// the row/column.
DistanceMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const DistanceMatrix& d);

// Feature file: header "label" followed by m feature names, then n rows of a
// label and m numbers.
FeatureTable load_features(const std::filesystem::path& path);
void save_features(const std::filesystem::path& path, const FeatureTable& f);

// Header "# curvature=<c> dim=<d> scaling_factor=<s>" then "label x1 .. xd"
// rows, tab separated.
void save_embedding(const std::filesystem::path& path, const EmbeddingResult& result);

// "epoch<TAB>loss" rows after a header line.
void save_loss_trace(const std::filesystem::path& path, const std::vector<double>& trace);

// "merge<TAB>a<TAB>b<TAB>height<TAB>size" rows after a header line.
void save_dendrogram(const std::filesystem::path& path, const Dendrogram& dend);

// Noisy graph edge list: "u<TAB>v<TAB>weight<TAB>kind" with kind tree|noise.
void save_graph(const std::filesystem::path& path, const NoisyGraph& g);

WeightedTree load_newick(const std::filesystem::path& path);
void save_newick(const std::filesystem::path& path, const WeightedTree& t);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace hypertree
