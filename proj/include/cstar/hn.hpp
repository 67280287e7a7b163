#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cstar/chain.hpp"
#include "cstar/graph.hpp"
#include "cstar/intersection.hpp"

namespace cstar {

struct HNPair {
    std::int64_t c = 0;
    std::int64_t p = 0;

    friend auto operator<=>(const HNPair&, const HNPair&) = default;
};

// j leading (c1,c1) pairs followed by the listed pairs, the first of which has p < c.
struct HNBranch {
    int j = 0;
    std::vector<HNPair> pairs;

    int h() const { return static_cast<int>(pairs.size()); }
    std::int64_t c1() const { return pairs.front().c; }
    std::int64_t p1() const { return pairs.front().p; }
    const HNPair& last() const { return pairs.back(); }

    // Full pair sequence including the j-fold prefix.
    std::vector<HNPair> expanded() const;

    friend auto operator<=>(const HNBranch&, const HNBranch&) = default;
};

// Throws InvalidBranch with the violated condition.
void validate(const HNBranch& branch);
bool is_valid(const HNBranch& branch);

// "(c,p)(c,p)..."
std::string format_pairs(const std::vector<HNPair>& pairs);
// "j:J pairs:(c,p)..."
std::string format_branch(const HNBranch& branch);
// Strict, whitespace-insensitive; ParseError carries the offset.
HNBranch parse_branch(std::string_view text);

// Closed forms for the multiplicity sequence.
std::int64_t mult_sum(const HNBranch& branch);
std::int64_t mult_sq_sum(const HNBranch& branch);

int jumping_prefix(const HNBranch& branch);

// Number of blowups the pair (c,p) takes: the sum of the partial quotients of c/p.
std::int64_t blowups_for_pair(std::int64_t c, std::int64_t p);

struct PairTrace {
    HNPair pair;
    std::vector<int> created;  // vertex ids in creation order
    int last = -1;             // final curve of the pair
};

struct BranchTrace {
    std::vector<std::int64_t> multiplicities;
    std::vector<PairTrace> pairs;  // includes the j-fold prefix
    int last = -1;                 // the curve meeting the branch transversally
};

// Runs the blowups for a branch starting at a point of `base` that lies on no
// other boundary curve. The final curve gets `last_label`.
BranchTrace simulate_branch(WeightedGraph& g, int base, const HNBranch& branch, Label last_label);

struct ResolutionResult {
    WeightedGraph graph;  // LINE_INFTY plus the exceptional curves; last curve labelled C
    std::vector<std::int64_t> multiplicities;
    std::int64_t blowup_count = 0;
    int line_id = -1;
    int c_id = -1;
    BranchTrace trace;
};

ResolutionResult resolve_branch(const HNBranch& branch);

// Maximal twig created by the pair (c,p), p < c, read from its tip.
Chain twig_of_pair(std::int64_t c, std::int64_t p);

// Twig of a single traced pair inside a resolution graph; empty for (c,c) pairs.
Twig twig_in_graph(const WeightedGraph& g, const PairTrace& trace);

}  // namespace cstar
