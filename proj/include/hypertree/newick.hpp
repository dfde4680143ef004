#pragma once

#include "hypertree/tree.hpp"

#include <string>
#include <string_view>

namespace hypertree {

// Newick text with branch lengths in shortest round-trip decimal form.
// Rooted trees are written from the root; unrooted trees from the internal
// vertex next to the first leaf, with a [&R]/[&U] prefix only when the
// two-children convention would misread rootedness. Labels containing delimiters, blanks or
// quotes are single-quoted with embedded quotes doubled.
std::string to_newick(const WeightedTree& t);

// Inverse of to_newick. A leading [&R] or [&U] comment decides rootedness;
// without one, a top-level node with two children and no label becomes the
// root and any other top-level node leaves the tree unrooted.
// Missing branch lengths read as 0. Throws ParseError with the character
// offset of the problem.
WeightedTree parse_newick(std::string_view text);

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace hypertree
