#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "cstar/graph.hpp"

namespace cstar {

struct MinimalizeOptions {
    std::set<Label> protected_labels{Label::E};
    // Canonical order picks LINE_INFTY first, then the lowest id.
    // A nonzero seed picks uniformly among eligible vertices instead.
    std::uint64_t random_seed = 0;
};

struct MinimalizeResult {
    WeightedGraph graph;
    std::vector<int> contracted;  // in contraction order
};

// A vertex is eligible when it is a (-1)-curve, unprotected, has at most two
// neighbours, and those neighbours are not already adjacent.
bool is_contractible(const WeightedGraph& g, int id, const std::set<Label>& protected_labels);

MinimalizeResult snc_minimalize(const WeightedGraph& g, const MinimalizeOptions& options = {});

}  // namespace cstar
