#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cstar/candidate.hpp"
#include "cstar/graph.hpp"

namespace cstar {

struct QDecomposition {
    std::vector<int> q0;
    std::vector<int> q1;        // tip first, ends next to C
    std::vector<int> q1_tilde;  // tip first, ends next to C~
    int c = -1;
    int c_tilde = -1;
    int e = -1;
    int g = -1;  // component of Q0 meeting C
    int g_tilde = -1;
};

struct BoundaryGraph {
    WeightedGraph before;  // D' + E' before minimalization
    WeightedGraph tree;    // D + E
    QDecomposition parts;
    std::vector<int> contracted;
    // Empty when C, C~ and E survive untouched and the decomposition is well formed.
    std::string problem;

    bool well_formed() const { return problem.empty(); }
    // Subgraph of `tree` on the given ids.
    WeightedGraph part(const std::vector<int>& ids) const { return tree.induced(ids); }
};

// Needs a consistent gamma'. Never throws on geometric failures; they land in `problem`.
BoundaryGraph assemble_boundary(const EmbeddingCandidate& cand);

}  // namespace cstar
