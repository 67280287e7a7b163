#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "cstar/hn.hpp"

namespace cstar {

// Two branches at infinity, lambda and lambda_tilde.
struct EmbeddingCandidate {
    HNBranch lambda;
    HNBranch lambda_tilde;

    friend auto operator<=>(const EmbeddingCandidate&, const EmbeddingCandidate&) = default;
};

void validate(const EmbeddingCandidate& cand);

// Orders the branches so that (j, pairs) <= (j~, pairs~).
EmbeddingCandidate normalized(EmbeddingCandidate cand);
bool is_normalized(const EmbeddingCandidate& cand);

std::int64_t degree(const EmbeddingCandidate& cand);

// gamma' read off the linear and the quadratic multiplicity identities.
struct GammaPrime {
    std::int64_t from_sum = 0;
    std::int64_t from_squares = 0;

    bool consistent() const { return from_sum == from_squares; }
    std::optional<std::int64_t> value() const {
        if (!consistent()) return std::nullopt;
        return from_sum;
    }
};

GammaPrime gamma_prime(const EmbeddingCandidate& cand);

// h + j + h~ + j~
int total_length(const EmbeddingCandidate& cand);

// h + j + h~ + j~ - gamma' - 2; nullopt when gamma' is inconsistent.
std::optional<std::int64_t> epsilon(const EmbeddingCandidate& cand);

// Number of branches whose last pair has p = 1.
int t_value(const EmbeddingCandidate& cand);

std::pair<int, int> type_of(const EmbeddingCandidate& cand);

// "(c1,p1,...;c~1,p~1,...)"
std::string format_coordinates(const EmbeddingCandidate& cand);
// "(c1,p1,...;c~1,p~1,...) j=J jt=JT"
std::string format_candidate(const EmbeddingCandidate& cand);

using Json = nlohmann::ordered_json;

Json branch_to_json(const HNBranch& branch);
HNBranch branch_from_json(const Json& j);
Json candidate_to_json(const EmbeddingCandidate& cand);
// Throws ParseError on schema violations.
EmbeddingCandidate candidate_from_json(const Json& j);

}  // namespace cstar
