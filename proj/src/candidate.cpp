#include "cstar/candidate.hpp"

#include "cstar/error.hpp"

namespace cstar {

void validate(const EmbeddingCandidate& cand) {
    validate(cand.lambda);
    validate(cand.lambda_tilde);
}

EmbeddingCandidate normalized(EmbeddingCandidate cand) {
    if (cand.lambda_tilde < cand.lambda) std::swap(cand.lambda, cand.lambda_tilde);
    return cand;
}

bool is_normalized(const EmbeddingCandidate& cand) { return !(cand.lambda_tilde < cand.lambda); }

std::int64_t degree(const EmbeddingCandidate& cand) { return cand.lambda.c1() + cand.lambda_tilde.c1(); }

GammaPrime gamma_prime(const EmbeddingCandidate& cand) {
    const HNBranch& a = cand.lambda;
    const HNBranch& b = cand.lambda_tilde;
    const std::int64_t d = degree(cand);
    // mult_sum carries the -1 of the last multiplicity; undo it for both branches.
    GammaPrime out;
    out.from_sum = (mult_sum(a) + 1 - a.c1()) + (mult_sum(b) + 1 - b.c1()) - 2 * d;
    out.from_squares = mult_sq_sum(a) + mult_sq_sum(b) - d * d;
    return out;
}

int total_length(const EmbeddingCandidate& cand) {
    return cand.lambda.h() + cand.lambda.j + cand.lambda_tilde.h() + cand.lambda_tilde.j;
}

std::optional<std::int64_t> epsilon(const EmbeddingCandidate& cand) {
    auto g = gamma_prime(cand).value();
    if (!g) return std::nullopt;
    return total_length(cand) - *g - 2;
}

int t_value(const EmbeddingCandidate& cand) {
    return static_cast<int>(cand.lambda.last().p == 1) + static_cast<int>(cand.lambda_tilde.last().p == 1);
}

std::pair<int, int> type_of(const EmbeddingCandidate& cand) {
    return {cand.lambda.j, cand.lambda_tilde.j};
}

namespace {

std::string flat_pairs(const HNBranch& b) {
    std::string out;
    for (const auto& pr : b.pairs) {
        if (!out.empty()) out += ",";
        out += std::to_string(pr.c) + "," + std::to_string(pr.p);
    }
    return out;
}

}  // namespace

std::string format_coordinates(const EmbeddingCandidate& cand) {
    return "(" + flat_pairs(cand.lambda) + ";" + flat_pairs(cand.lambda_tilde) + ")";
}

std::string format_candidate(const EmbeddingCandidate& cand) {
    return format_coordinates(cand) + " j=" + std::to_string(cand.lambda.j) +
           " jt=" + std::to_string(cand.lambda_tilde.j);
}

Json branch_to_json(const HNBranch& branch) {
    Json pairs = Json::array();
    for (const auto& pr : branch.pairs) pairs.push_back(Json::array({pr.c, pr.p}));
    Json out;
    out["j"] = branch.j;
    out["pairs"] = pairs;
    return out;
}

HNBranch branch_from_json(const Json& j) {
    auto fail = [](const std::string& why) { throw ParseError(0, "candidate schema: " + why); };
    if (!j.is_object()) fail("branch must be an object");
    for (const auto& item : j.items()) {
        if (item.key() != "j" && item.key() != "pairs") fail("unexpected key '" + item.key() + "'");
    }
    if (!j.contains("j") || !j["j"].is_number_integer()) fail("branch needs integer 'j'");
    if (!j.contains("pairs") || !j["pairs"].is_array()) fail("branch needs array 'pairs'");
    HNBranch b;
    b.j = j["j"].get<int>();
    for (const auto& pr : j["pairs"]) {
        if (!pr.is_array() || pr.size() != 2 || !pr[0].is_number_integer() || !pr[1].is_number_integer()) {
            fail("each pair must be [c,p]");
        }
        b.pairs.push_back({pr[0].get<std::int64_t>(), pr[1].get<std::int64_t>()});
    }
    try {
        validate(b);
    } catch (const Error& e) {
        fail(e.what());
    }
    return b;
}

Json candidate_to_json(const EmbeddingCandidate& cand) {
    Json out;
    out["lambda"] = branch_to_json(cand.lambda);
    out["lambda_tilde"] = branch_to_json(cand.lambda_tilde);
    return out;
}

EmbeddingCandidate candidate_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("lambda") || !j.contains("lambda_tilde")) {
        throw ParseError(0, "candidate schema: need 'lambda' and 'lambda_tilde'");
    }
    EmbeddingCandidate c;
    c.lambda = branch_from_json(j["lambda"]);
    c.lambda_tilde = branch_from_json(j["lambda_tilde"]);
    return c;
}

}  // namespace cstar
