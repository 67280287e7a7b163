#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cstar/enumerate.hpp"
#include "cstar/error.hpp"
#include "cstar/hn.hpp"

#ifndef CSTAR_DEFAULT_FIXTURES
#define CSTAR_DEFAULT_FIXTURES "fixtures"
#endif

namespace {

using namespace cstar;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

Json graph_json(const WeightedGraph& g) {
    Json vertices = Json::array();
    for (int id : g.vertex_ids()) {
        Json v;
        v["id"] = id;
        v["weight"] = g.weight(id);
        v["label"] = to_string(g.label(id));
        vertices.push_back(v);
    }
    Json edges = Json::array();
    for (auto [a, b] : g.edges()) edges.push_back(Json::array({a, b}));
    Json out;
    out["vertices"] = vertices;
    out["edges"] = edges;
    return out;
}

int run_resolve(const std::string& literal, const std::string& format) {
    HNBranch branch = parse_branch(literal);
    ResolutionResult res = resolve_branch(branch);

    Json twigs = Json::array();
    std::ostringstream twig_text;
    for (const auto& pt : res.trace.pairs) {
        if (pt.pair.p == pt.pair.c) continue;
        Twig twig = twig_in_graph(res.graph, pt);
        Json t;
        t["pair"] = Json::array({pt.pair.c, pt.pair.p});
        t["chain"] = twig.chain;
        t["discriminant"] = discriminant(twig.chain);
        t["e"] = e_twig(twig.chain).str();
        twigs.push_back(t);
        twig_text << "twig " << format_pairs({pt.pair}) << ": " << format_chain(twig.chain)
                  << " d=" << discriminant(twig.chain) << " e=" << e_twig(twig.chain).str() << "\n";
    }

    if (format == "dot") {
        std::cout << to_dot(res.graph, "resolution");
    } else if (format == "json") {
        Json out;
        out["branch"] = format_branch(branch);
        out["graph"] = graph_json(res.graph);
        out["multiplicities"] = res.multiplicities;
        out["mult_sum"] = mult_sum(branch);
        out["mult_sq_sum"] = mult_sq_sum(branch);
        out["blowup_count"] = res.blowup_count;
        out["twigs"] = twigs;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "branch " << format_branch(branch) << "\n" << to_text(res.graph);
        std::cout << "multiplicities:";
        for (auto m : res.multiplicities) std::cout << " " << m;
        std::cout << "\nsum " << mult_sum(branch) << ", sum of squares " << mult_sq_sum(branch) << ", blowups "
                  << res.blowup_count << "\n"
                  << twig_text.str();
    }
    return kOk;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(e.byte, std::string("invalid JSON in ") + path);
    }
}

int run_check(const std::string& path, Stage stage, const std::string& format) {
    EmbeddingCandidate cand = candidate_from_json(read_json_file(path));
    ConstraintReport report = apply_filters(cand, stage);
    if (format == "json") {
        std::cout << report_to_json(report).dump(2) << "\n";
    } else {
        std::cout << report_to_text(report);
    }
    return report.survived() ? kOk : kNegative;
}

int run_enumerate(const SearchSpec& spec, const std::string& format) {
    SearchResult result = enumerate(spec);
    if (format == "json") {
        std::cout << to_json(result).dump(2) << "\n";
    } else if (format == "jsonl") {
        std::cout << to_jsonl(result);
    } else if (format == "csv") {
        std::cout << to_csv(result);
    } else {
        std::cout << to_text(result);
    }
    return kOk;
}

std::filesystem::path fixtures_dir() {
    if (const char* env = std::getenv("CSTAR_FORGE_FIXTURES"); env && *env) return env;
    return CSTAR_DEFAULT_FIXTURES;
}

int run_reproduce(const std::string& id, int jobs) {
    auto ids = canned_case_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        std::cerr << "error: unknown case '" << id << "'; available:";
        for (const auto& k : ids) std::cerr << " " << k;
        std::cerr << "\n";
        return kUsage;
    }
    auto path = fixtures_dir() / (id + ".json");
    Json fixture = read_json_file(path.string());

    CaseResult result = run_case(id, jobs);
    Json got = case_to_json(result);
    std::cout << "case " << id << ": " << result.solutions.size() << " solution(s)\n";
    for (const auto& s : result.solutions) {
        std::cout << "  " << format_candidate(s.candidate) << " gamma=" << s.gamma;
        if (!s.note.empty()) std::cout << "  (" << s.note << ")";
        std::cout << "\n";
    }

    const Json& want = fixture.at("solutions");
    if (want == got["solutions"]) {
        std::cout << "fixture " << path.string() << ": identical\n";
        return kOk;
    }
    std::cout << "fixture " << path.string() << ": differs\n";
    for (const auto& w : want) {
        if (std::find(got["solutions"].begin(), got["solutions"].end(), w) == got["solutions"].end()) {
            std::cout << "- " << w.dump() << "\n";
        }
    }
    for (const auto& g : got["solutions"]) {
        if (std::find(want.begin(), want.end(), g) == want.end()) std::cout << "+ " << g.dump() << "\n";
    }
    return kNegative;
}

int run_verify(int max_degree, int jobs) {
    TheoremCheck check = verify_main_theorem(max_degree, jobs);
    std::cout << to_text(check.result);
    std::cout << "counterexamples: " << check.counterexamples.size() << "\n";
    for (const auto& r : check.counterexamples) std::cout << report_to_text(r);
    return check.ok() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary combinatorics and candidate searches for closed C* embeddings in the plane"};
    app.require_subcommand(1, 1);

    std::string format = "text";
    std::string stage_name = "case";
    auto stage_check = CLI::IsMember({"arithmetic", "graph", "bmy", "case"});

    auto* resolve = app.add_subcommand("resolve", "Resolve one branch given as 'j:J pairs:(c,p)...'");
    std::string literal;
    resolve->add_option("branch", literal, "Branch literal")->required();
    resolve->add_option("--format", format, "text, dot or json")->check(CLI::IsMember({"text", "dot", "json"}));

    auto* check = app.add_subcommand("check", "Run the filters on a candidate JSON file");
    std::string path;
    check->add_option("file", path, "Candidate JSON")->required();
    check->add_option("--stage", stage_name, "Last stage to run")->check(stage_check);
    check->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* enumerate_cmd = app.add_subcommand("enumerate", "Exhaustive candidate search");
    SearchSpec spec;
    std::string type_text = "*,*";
    enumerate_cmd->add_option("--max-degree", spec.max_degree, "Largest degree d")->check(CLI::Range(4, 200));
    enumerate_cmd->add_option("--type", type_text, "Type pattern J,JT with * or >=N");
    enumerate_cmd->add_option("--stage", stage_name, "Last stage to run")->check(stage_check);
    enumerate_cmd->add_option("--format", format, "text, json, jsonl or csv")
        ->check(CLI::IsMember({"text", "json", "jsonl", "csv"}));
    enumerate_cmd->add_option("--max-pairs", spec.max_pairs, "Cap on pairs per branch, 0 for none")
        ->check(CLI::Range(0, 10));
    enumerate_cmd->add_flag("--trace", spec.trace, "Report every consistent candidate");
    enumerate_cmd->add_option("--jobs", spec.jobs, "Worker threads, 0 for all cores")->check(CLI::Range(0, 256));

    auto* reproduce = app.add_subcommand("reproduce", "Rerun a canned case search and diff against its fixture");
    std::string case_id;
    int jobs = 1;
    reproduce->add_option("case", case_id, "Case id")->required();
    reproduce->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(0, 256));

    auto* verify = app.add_subcommand("verify", "Check the type and gamma bounds on all full-stage survivors");
    int verify_degree = 30;
    verify->add_option("--max-degree", verify_degree, "Largest degree d")->check(CLI::Range(4, 200));
    verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(0, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        Stage stage = *parse_stage(stage_name);
        if (*resolve) return run_resolve(literal, format);
        if (*check) return run_check(path, stage, format);
        if (*enumerate_cmd) {
            auto pattern = parse_type_pattern(type_text);
            if (!pattern) {
                std::cerr << "error: bad --type '" << type_text << "'\n";
                return kUsage;
            }
            spec.type = *pattern;
            spec.stage = stage;
            return run_enumerate(spec, format);
        }
        if (*reproduce) return run_reproduce(case_id, jobs);
        if (*verify) return run_verify(verify_degree, jobs);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::InvalidInput ? kUsage : kNegative;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
