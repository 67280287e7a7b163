#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cstar/candidate.hpp"

namespace cstar {

// Stages are cumulative: running a stage runs every earlier one first.
enum class Stage { Arithmetic, Graph, Bmy, Case };
enum class Status { Pass, Fail, Inapplicable };

const char* to_string(Stage stage);
const char* to_string(Status status);
// Lower case names: arithmetic, graph, bmy, case.
std::optional<Stage> parse_stage(std::string_view text);

using Witness = std::vector<std::pair<std::string, std::string>>;

struct Verdict {
    std::string filter;
    Stage stage = Stage::Arithmetic;
    Status status = Status::Pass;
    std::string citation;
    Witness witness;
};

struct ConstraintReport {
    EmbeddingCandidate candidate;  // normalized
    Stage stage = Stage::Arithmetic;
    std::vector<Verdict> verdicts;
    std::optional<std::string> eliminated_by;

    bool survived() const { return !eliminated_by.has_value(); }
};

struct FilterInfo {
    std::string name;
    Stage stage;
    std::string citation;
};

// In evaluation order.
const std::vector<FilterInfo>& filter_catalog();
const FilterInfo& filter_info(std::string_view name);

// Evaluates filters in catalog order up to `stage`, stopping at the first failure.
ConstraintReport apply_filters(const EmbeddingCandidate& cand, Stage stage);

// Runs one filter on its own, ignoring earlier ones. Filters past the
// arithmetic stage need a consistent gamma' >= 1.
Verdict evaluate_filter(const EmbeddingCandidate& cand, std::string_view name);

Json report_to_json(const ConstraintReport& report);
std::string report_to_text(const ConstraintReport& report);

// Coordinate change on a j = 0 branch with c1 = k c2, c1 - p1 = c2 and at least
// k - 1 pairs (c2,c2) right after the first pair.
struct Type0Reduction {
    bool applicable = false;
    bool on_tilde = false;  // which branch was used
    std::int64_t k = 0;
    std::int64_t r = 0;
    std::int64_t c2 = 0;
    int new_jt = 0;
    std::int64_t old_degree = 0;
    std::int64_t new_degree = 0;
    bool drops = false;
};

// Defined for types (0, j~) with j~ <= 2; otherwise not applicable.
Type0Reduction reduce_type0(const EmbeddingCandidate& cand);

}  // namespace cstar
