#pragma once

#include <climits>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cstar/candidate.hpp"
#include "cstar/filters.hpp"

namespace cstar {

struct IntRange {
    int lo = 0;
    int hi = INT_MAX;

    bool contains(int v) const { return v >= lo && v <= hi; }
    std::string str() const;
};

// Pattern on the normalized type (j, jt).
struct TypePattern {
    IntRange j;
    IntRange jt;

    bool matches(int jj, int jjt) const { return j.contains(jj) && jt.contains(jjt); }
    std::string str() const;
};

// "J,JT" where each side is "*", "N" or ">=N".
std::optional<TypePattern> parse_type_pattern(std::string_view text);

struct SearchSpec {
    int max_degree = 16;
    TypePattern type;
    Stage stage = Stage::Case;
    // Cap on h + j + h~ + j~. Larger totals cannot pass the arithmetic stage.
    int max_length = 11;
    // Cap on h for each branch; 0 means no cap beyond max_length.
    int max_pairs = 0;
    bool trace = false;
    int jobs = 1;
};

struct SearchResult {
    SearchSpec spec;
    std::int64_t candidates = 0;  // size of the search space
    std::vector<std::pair<std::string, std::int64_t>> eliminations;  // catalog order
    std::vector<EmbeddingCandidate> survivors;
    std::vector<ConstraintReport> trace;  // every consistent candidate, when requested

    std::int64_t eliminated(std::string_view filter) const;
};

// Orders by (d, j, jt, pairs, pairs~).
bool candidate_less(const EmbeddingCandidate& a, const EmbeddingCandidate& b);

// All valid branches with c1 = c, at most max_length - 1 entries counting the
// j-fold prefix, and at most max_pairs pairs when that is positive.
std::vector<HNBranch> branches_for(std::int64_t c, int max_length, int max_pairs = 0);

// Meet-in-the-middle on the consistency identity; blocks (d, c1) run in parallel.
SearchResult enumerate(const SearchSpec& spec);

// Evaluates every candidate of the space with nested loops. Needs max_degree <= 16.
SearchResult brute_oracle(const SearchSpec& spec);

struct TheoremCheck {
    SearchResult result;
    std::vector<ConstraintReport> counterexamples;

    bool ok() const { return counterexamples.empty(); }
};

// Every full-stage survivor must have j = 1, jt in 2..6 and gamma in 2..5.
TheoremCheck verify_main_theorem(int max_degree, int jobs = 1);

std::string to_jsonl(const SearchResult& result);
std::string to_csv(const SearchResult& result);
Json to_json(const SearchResult& result);
std::string to_text(const SearchResult& result);

// Searches with the auxiliary constraints of a particular case hard-coded.
struct CaseSolution {
    EmbeddingCandidate candidate;
    std::int64_t gamma = 0;
    std::string note;
};

struct CaseResult {
    std::string id;
    std::string description;
    std::vector<CaseSolution> solutions;
};

std::vector<std::string> canned_case_ids();
// Throws InvalidInput for unknown ids.
CaseResult run_case(std::string_view id, int jobs = 1);
Json case_to_json(const CaseResult& result);

}  // namespace cstar
