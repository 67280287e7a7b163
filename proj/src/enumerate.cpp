#include "cstar/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "cstar/error.hpp"

namespace cstar {

std::string IntRange::str() const {
    if (lo == 0 && hi == INT_MAX) return "*";
    if (hi == INT_MAX) return ">=" + std::to_string(lo);
    if (lo == hi) return std::to_string(lo);
    return std::to_string(lo) + ".." + std::to_string(hi);
}

std::string TypePattern::str() const { return j.str() + "," + jt.str(); }

namespace {

std::optional<IntRange> parse_range(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text == "*") return IntRange{};
    bool at_least = false;
    if (text.substr(0, 2) == ">=") {
        at_least = true;
        text.remove_prefix(2);
    }
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v < 0) return std::nullopt;
    return at_least ? IntRange{v, INT_MAX} : IntRange{v, v};
}

}  // namespace

std::optional<TypePattern> parse_type_pattern(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    auto j = parse_range(text.substr(0, comma));
    auto jt = parse_range(text.substr(comma + 1));
    if (!j || !jt) return std::nullopt;
    return TypePattern{*j, *jt};
}

std::int64_t SearchResult::eliminated(std::string_view filter) const {
    for (const auto& [name, count] : eliminations) {
        if (name == filter) return count;
    }
    return 0;
}

bool candidate_less(const EmbeddingCandidate& a, const EmbeddingCandidate& b) {
    auto key = [](const EmbeddingCandidate& c) {
        return std::tie(c.lambda.j, c.lambda_tilde.j, c.lambda.pairs, c.lambda_tilde.pairs);
    };
    std::int64_t da = degree(a);
    std::int64_t db = degree(b);
    if (da != db) return da < db;
    return key(a) < key(b);
}

namespace {

void collect_tails(std::int64_t c, bool first, int budget, std::vector<HNPair>& prefix,
                   std::vector<std::vector<HNPair>>& out) {
    for (std::int64_t p = 1; p <= c; ++p) {
        if (first && p == c) continue;
        std::int64_t g = std::gcd(c, p);
        prefix.push_back({c, p});
        if (g == 1) {
            out.push_back(prefix);
        } else if (static_cast<int>(prefix.size()) < budget) {
            collect_tails(g, false, budget, prefix, out);
        }
        prefix.pop_back();
    }
}

}  // namespace

std::vector<HNBranch> branches_for(std::int64_t c, int max_length, int max_pairs) {
    std::vector<HNBranch> out;
    const int per_branch = max_length - 1;
    int h_cap = per_branch;
    if (max_pairs > 0) h_cap = std::min(h_cap, max_pairs);
    if (c < 2 || h_cap < 1) return out;
    std::vector<std::vector<HNPair>> tails;
    std::vector<HNPair> prefix;
    collect_tails(c, true, h_cap, prefix, tails);
    for (auto& tail : tails) {
        for (int j = 0; j + static_cast<int>(tail.size()) <= per_branch; ++j) out.push_back({j, tail});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::int64_t consistency_key(const HNBranch& b) {
    std::int64_t lin = b.j * b.c1();
    std::int64_t quad = b.j * b.c1() * b.c1();
    for (const auto& pr : b.pairs) {
        lin += pr.p;
        quad += pr.c * pr.p;
    }
    return lin - quad;
}

int length_of(const HNBranch& b) { return b.j + b.h(); }

struct BranchTable {
    std::vector<HNBranch> branches;
    std::vector<std::int64_t> keys;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> by_key;
    // hist[j][length]
    std::vector<std::vector<std::int64_t>> hist;
};

struct Space {
    SearchSpec spec;
    std::map<std::int64_t, BranchTable> tables;
    std::vector<std::pair<std::int64_t, std::int64_t>> blocks;  // (d, c1)
    std::vector<std::string> filter_names;
};

Space build_space(const SearchSpec& spec) {
    if (spec.max_degree < 4) throw Error(ErrorCode::InvalidInput, "max_degree must be at least 4");
    Space s;
    s.spec = spec;
    for (std::int64_t c = 2; c <= spec.max_degree - 2; ++c) {
        BranchTable t;
        t.branches = branches_for(c, spec.max_length, spec.max_pairs);
        t.hist.assign(static_cast<std::size_t>(spec.max_length) + 1,
                      std::vector<std::int64_t>(static_cast<std::size_t>(spec.max_length) + 1, 0));
        for (std::size_t i = 0; i < t.branches.size(); ++i) {
            const HNBranch& b = t.branches[i];
            std::int64_t k = consistency_key(b);
            t.keys.push_back(k);
            t.by_key[k].push_back(i);
            ++t.hist[static_cast<std::size_t>(b.j)][static_cast<std::size_t>(length_of(b))];
        }
        s.tables.emplace(c, std::move(t));
    }
    for (std::int64_t d = 4; d <= spec.max_degree; ++d) {
        for (std::int64_t c1 = 2; c1 <= d - 2; ++c1) s.blocks.emplace_back(d, c1);
    }
    for (const auto& f : filter_catalog()) {
        if (f.stage <= spec.stage) s.filter_names.push_back(f.name);
    }
    return s;
}

struct BlockResult {
    std::int64_t candidates = 0;
    std::vector<std::int64_t> eliminations;
    std::vector<EmbeddingCandidate> survivors;
    std::vector<ConstraintReport> trace;
};

bool admits(const SearchSpec& spec, const HNBranch& a, const HNBranch& b) {
    return !(b < a) && spec.type.matches(a.j, b.j) && length_of(a) + length_of(b) <= spec.max_length;
}

void record(const Space& s, const ConstraintReport& report, BlockResult& out) {
    if (report.eliminated_by) {
        auto it = std::find(s.filter_names.begin(), s.filter_names.end(), *report.eliminated_by);
        ++out.eliminations[static_cast<std::size_t>(it - s.filter_names.begin())];
    } else {
        out.survivors.push_back(report.candidate);
    }
    if (s.spec.trace && report.verdicts.front().status == Status::Pass) out.trace.push_back(report);
}

// Number of normalized, pattern-matching, length-capped pairs in a block.
std::int64_t count_block(const Space& s, std::int64_t d, std::int64_t c1) {
    const std::int64_t ct = d - c1;
    const auto& ha = s.tables.at(c1).hist;
    const auto& hb = s.tables.at(ct).hist;
    const SearchSpec& spec = s.spec;
    const int n = spec.max_length;
    std::int64_t total = 0;
    for (int ja = 0; ja <= n; ++ja) {
        for (int jb = ja; jb <= n; ++jb) {
            if (!spec.type.matches(ja, jb)) continue;
            std::int64_t ordered = 0;
            std::int64_t diagonal = 0;
            for (int la = 0; la <= n; ++la) {
                std::int64_t na = ha[static_cast<std::size_t>(ja)][static_cast<std::size_t>(la)];
                if (na == 0) continue;
                for (int lb = 0; la + lb <= n; ++lb) {
                    ordered += na * hb[static_cast<std::size_t>(jb)][static_cast<std::size_t>(lb)];
                }
                if (2 * la <= n) diagonal += na;
            }
            if (ja < jb || c1 < ct) {
                total += ordered;
            } else if (c1 == ct) {
                total += (ordered + diagonal) / 2;
            }
        }
    }
    return total;
}

BlockResult run_block(const Space& s, std::int64_t d, std::int64_t c1) {
    BlockResult out;
    out.eliminations.assign(s.filter_names.size(), 0);
    out.candidates = count_block(s, d, c1);
    const std::int64_t ct = d - c1;
    const BranchTable& ta = s.tables.at(c1);
    const BranchTable& tb = s.tables.at(ct);
    const std::int64_t target = 2 * d - d * d;
    std::int64_t consistent = 0;
    for (std::size_t i = 0; i < ta.branches.size(); ++i) {
        const HNBranch& a = ta.branches[i];
        if (!s.spec.type.j.contains(a.j)) continue;
        auto it = tb.by_key.find(target - ta.keys[i]);
        if (it == tb.by_key.end()) continue;
        for (std::size_t k : it->second) {
            const HNBranch& b = tb.branches[k];
            if (!admits(s.spec, a, b)) continue;
            ++consistent;
            record(s, apply_filters({a, b}, s.spec.stage), out);
        }
    }
    // Everything the join skipped fails the first filter.
    out.eliminations[0] += out.candidates - consistent;
    return out;
}

BlockResult run_block_brute(const Space& s, std::int64_t d, std::int64_t c1) {
    BlockResult out;
    out.eliminations.assign(s.filter_names.size(), 0);
    const std::int64_t ct = d - c1;
    for (const HNBranch& a : s.tables.at(c1).branches) {
        for (const HNBranch& b : s.tables.at(ct).branches) {
            if (!admits(s.spec, a, b)) continue;
            ++out.candidates;
            record(s, apply_filters({a, b}, s.spec.stage), out);
        }
    }
    return out;
}

template <typename Fn>
SearchResult run_blocks(const Space& s, Fn fn) {
    std::vector<BlockResult> results(s.blocks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= s.blocks.size()) break;
            results[i] = fn(s, s.blocks[i].first, s.blocks[i].second);
        }
    };
    int jobs = s.spec.jobs > 0 ? s.spec.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    SearchResult out;
    out.spec = s.spec;
    std::vector<std::int64_t> elim(s.filter_names.size(), 0);
    for (auto& r : results) {
        out.candidates += r.candidates;
        for (std::size_t i = 0; i < elim.size(); ++i) elim[i] += r.eliminations[i];
        std::move(r.survivors.begin(), r.survivors.end(), std::back_inserter(out.survivors));
        std::move(r.trace.begin(), r.trace.end(), std::back_inserter(out.trace));
    }
    for (std::size_t i = 0; i < elim.size(); ++i) out.eliminations.emplace_back(s.filter_names[i], elim[i]);
    std::sort(out.survivors.begin(), out.survivors.end(), candidate_less);
    std::stable_sort(out.trace.begin(), out.trace.end(), [](const ConstraintReport& a, const ConstraintReport& b) {
        return candidate_less(a.candidate, b.candidate);
    });
    return out;
}

}  // namespace

SearchResult enumerate(const SearchSpec& spec) { return run_blocks(build_space(spec), run_block); }

SearchResult brute_oracle(const SearchSpec& spec) {
    if (spec.max_degree > 16) throw Error(ErrorCode::InvalidInput, "brute_oracle is limited to max_degree <= 16");
    return run_blocks(build_space(spec), run_block_brute);
}

TheoremCheck verify_main_theorem(int max_degree, int jobs) {
    SearchSpec spec;
    spec.max_degree = max_degree;
    spec.stage = Stage::Case;
    spec.jobs = jobs;
    TheoremCheck out;
    out.result = enumerate(spec);
    for (const auto& c : out.result.survivors) {
        std::int64_t gamma = gamma_prime(c).from_sum;
        int j = c.lambda.j;
        int jt = c.lambda_tilde.j;
        if (j == 1 && jt >= 2 && jt <= 6 && gamma >= 2 && gamma <= 5) continue;
        out.counterexamples.push_back(apply_filters(c, Stage::Case));
    }
    return out;
}

namespace {

std::vector<const ConstraintReport*> report_rows(const SearchResult& r, std::vector<ConstraintReport>& scratch) {
    std::vector<const ConstraintReport*> rows;
    if (r.spec.trace) {
        for (const auto& rep : r.trace) rows.push_back(&rep);
        return rows;
    }
    scratch.clear();
    for (const auto& c : r.survivors) scratch.push_back(apply_filters(c, r.spec.stage));
    for (const auto& rep : scratch) rows.push_back(&rep);
    return rows;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::string to_jsonl(const SearchResult& result) {
    std::vector<ConstraintReport> scratch;
    std::string out;
    for (const ConstraintReport* rep : report_rows(result, scratch)) out += report_to_json(*rep).dump() + "\n";
    return out;
}

std::string to_csv(const SearchResult& result) {
    std::vector<ConstraintReport> scratch;
    std::string out = "d,j,jt,pairs,pairs_tilde,gamma,epsilon,t,eliminated_by\n";
    for (const ConstraintReport* rep : report_rows(result, scratch)) {
        const EmbeddingCandidate& c = rep->candidate;
        auto eps = epsilon(c);
        out += std::to_string(degree(c)) + "," + std::to_string(c.lambda.j) + "," + std::to_string(c.lambda_tilde.j) +
               "," + csv_quote(format_pairs(c.lambda.pairs)) + "," + csv_quote(format_pairs(c.lambda_tilde.pairs)) +
               "," + (eps ? std::to_string(gamma_prime(c).from_sum) : "") + "," +
               (eps ? std::to_string(*eps) : "") + "," + std::to_string(t_value(c)) + "," +
               rep->eliminated_by.value_or("") + "\n";
    }
    return out;
}

Json to_json(const SearchResult& result) {
    Json out;
    out["max_degree"] = result.spec.max_degree;
    out["type"] = result.spec.type.str();
    out["stage"] = to_string(result.spec.stage);
    out["max_length"] = result.spec.max_length;
    out["candidates"] = result.candidates;
    Json elim = Json::object();
    for (const auto& [name, count] : result.eliminations) elim[name] = count;
    out["eliminations"] = elim;
    Json surv = Json::array();
    for (const auto& c : result.survivors) surv.push_back(report_to_json(apply_filters(c, result.spec.stage)));
    out["survivors"] = surv;
    return out;
}

std::string to_text(const SearchResult& result) {
    std::ostringstream os;
    os << "search d <= " << result.spec.max_degree << ", type " << result.spec.type.str() << ", stage "
       << to_string(result.spec.stage) << "\n";
    os << "candidates: " << result.candidates << "\n";
    for (const auto& [name, count] : result.eliminations) os << "  " << name << ": " << count << "\n";
    os << "survivors: " << result.survivors.size() << "\n";
    for (const auto& c : result.survivors) {
        os << "  d=" << degree(c) << " " << format_candidate(c) << " gamma=" << gamma_prime(c).from_sum
           << " eps=" << epsilon(c).value_or(0) << " t=" << t_value(c) << "\n";
    }
    return os.str();
}

namespace {

bool valid_pair(std::int64_t c, std::int64_t p) { return p >= 1 && p < c; }

// Type (0,jt), one pair on each side, gamma != 2a where a = c1 - ct1.
CaseResult case_00() {
    CaseResult out;
    out.id = "0j-hh-00";
    out.description =
        "type (0,jt) with jt >= 3 and one pair per branch: a = c1 - ct1 in {2,3,4}, gamma in {2..5}, "
        "gamma != 2a, p1 and pt1 up to 12, ct1 = (gamma + a(a - p1))/(gamma - 2a), "
        "jt = 4 + (2a + gamma - p1 - pt1)/ct1, kept when the type (0,jt) asymptote bound holds";
    for (std::int64_t a = 2; a <= 4; ++a) {
        for (std::int64_t gamma = 2; gamma <= 5; ++gamma) {
            if (gamma == 2 * a) continue;
            for (std::int64_t p1 = 1; p1 <= 12; ++p1) {
                for (std::int64_t pt1 = 1; pt1 <= 12; ++pt1) {
                    std::int64_t num = gamma + a * (a - p1);
                    std::int64_t den = gamma - 2 * a;
                    if (num % den != 0) continue;
                    std::int64_t ct1 = num / den;
                    if (ct1 < 2) continue;
                    std::int64_t c1 = ct1 + a;
                    std::int64_t rem = 2 * a + gamma - p1 - pt1;
                    if (rem % ct1 != 0) continue;
                    std::int64_t jt = 4 + rem / ct1;
                    if (jt < 4) continue;
                    if (!valid_pair(c1, p1) || !valid_pair(ct1, pt1)) continue;
                    EmbeddingCandidate c{{0, {{c1, p1}}}, {static_cast<int>(jt), {{ct1, pt1}}}};
                    if (!is_valid(c.lambda) || !is_valid(c.lambda_tilde)) continue;
                    if (gamma_prime(c).value() != gamma) continue;
                    bool noasy = jt == 3 ? 2 * c1 - ct1 >= pt1 + p1 : 2 * (c1 - ct1) >= p1;
                    if (!noasy) continue;
                    out.solutions.push_back({c, gamma, ""});
                }
            }
        }
    }
    return out;
}

// Type (0,jt), one pair on lambda and two on lambda_tilde with pt2 = gamma + x.
CaseResult case_01x() {
    CaseResult out;
    out.id = "0j-hh-01-x";
    out.description =
        "type (0,jt) with h = 1 and ht = 2: a = c1 - ct1 in {2,3}, gamma in {2..5}, x in {-4..-1}, "
        "pt2 = gamma + x >= 1, 2a + x != 0, p1 + pt1 <= 2a - x with p1, pt1 <= 9, pt2 < ct2 <= pt1, "
        "ct1 = (pt2 ct2 + a(p1 - a) - gamma)/(2a + x), jt = 4 + (2a - x - p1 - pt1)/ct1";
    for (std::int64_t a = 2; a <= 3; ++a) {
        for (std::int64_t gamma = 2; gamma <= 5; ++gamma) {
            for (std::int64_t x = -4; x <= -1; ++x) {
                std::int64_t pt2 = gamma + x;
                if (pt2 < 1 || 2 * a + x == 0) continue;
                for (std::int64_t p1 = 1; p1 <= 9; ++p1) {
                    for (std::int64_t pt1 = 1; pt1 <= 9; ++pt1) {
                        if (p1 + pt1 > 2 * a - x) continue;
                        for (std::int64_t ct2 = pt2 + 1; ct2 <= pt1; ++ct2) {
                            std::int64_t m = pt2 * ct2 + a * (p1 - a) - gamma;
                            if (m % (2 * a + x) != 0) continue;
                            std::int64_t ct1 = m / (2 * a + x);
                            if (ct1 < 2) continue;
                            std::int64_t c1 = ct1 + a;
                            std::int64_t rem = 2 * a - x - p1 - pt1;
                            if (rem % ct1 != 0) continue;
                            std::int64_t jt = 4 + rem / ct1;
                            if (jt < 0) continue;
                            EmbeddingCandidate c{{0, {{c1, p1}}}, {static_cast<int>(jt), {{ct1, pt1}, {ct2, pt2}}}};
                            if (!is_valid(c.lambda) || !is_valid(c.lambda_tilde)) continue;
                            if (gamma_prime(c).value() != gamma) continue;
                            ConstraintReport r = apply_filters(c, Stage::Case);
                            std::string note;
                            for (const auto& v : r.verdicts) {
                                if (v.filter == "F_NOASY_03") note = std::string("F_NOASY_03 ") + to_string(v.status);
                            }
                            if (note.empty()) note = "eliminated by " + r.eliminated_by.value_or("none") +
                                                     " before F_NOASY_03";
                            out.solutions.push_back({c, gamma, note});
                        }
                    }
                }
            }
        }
    }
    return out;
}

CaseResult case_11(int jobs) {
    CaseResult out;
    out.id = "type-11";
    out.description = "type (1,1), all filter stages, d <= 60";
    SearchSpec spec;
    spec.max_degree = 60;
    spec.type = TypePattern{{1, 1}, {1, 1}};
    spec.stage = Stage::Case;
    spec.jobs = jobs;
    for (const auto& c : enumerate(spec).survivors) out.solutions.push_back({c, gamma_prime(c).from_sum, ""});
    return out;
}

}  // namespace

std::vector<std::string> canned_case_ids() { return {"0j-hh-00", "0j-hh-01-x", "type-11"}; }

CaseResult run_case(std::string_view id, int jobs) {
    CaseResult r;
    if (id == "0j-hh-00") {
        r = case_00();
    } else if (id == "0j-hh-01-x") {
        r = case_01x();
    } else if (id == "type-11") {
        r = case_11(jobs);
    } else {
        throw Error(ErrorCode::InvalidInput, "unknown case '" + std::string(id) + "'");
    }
    std::sort(r.solutions.begin(), r.solutions.end(),
              [](const CaseSolution& a, const CaseSolution& b) { return candidate_less(a.candidate, b.candidate); });
    return r;
}

Json case_to_json(const CaseResult& result) {
    Json out;
    out["case"] = result.id;
    out["description"] = result.description;
    Json sols = Json::array();
    for (const auto& s : result.solutions) {
        Json js;
        js["coordinates"] = format_coordinates(s.candidate);
        js["j"] = s.candidate.lambda.j;
        js["jt"] = s.candidate.lambda_tilde.j;
        js["gamma"] = s.gamma;
        sols.push_back(js);
    }
    out["solutions"] = sols;
    return out;
}

}  // namespace cstar
