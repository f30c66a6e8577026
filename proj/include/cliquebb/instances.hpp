#pragma once

#include <optional>
#include <string>

#include "cliquebb/graph.hpp"

namespace cliquebb {

// Exactly constructible benchmark families.  Vertices carry 1-based labels in
// generation order, matching the standard published files.

// Vertices are the 2^bits binary words; edge when the words differ in at
// least min_dist bits.
graph hamming_graph(int bits, int min_dist);

// Vertices are the w-element subsets of {1..n} in lexicographic order; edge
// when the incidence vectors differ in at least min_dist positions.
graph johnson_graph(int n, int w, int min_dist);

// hamming6-2, hamming6-4, johnson8-2-4, johnson8-4-4; nullopt otherwise.
std::optional<graph> named_instance(const std::string& name);

}  // namespace cliquebb
