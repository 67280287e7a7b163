// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "cstar/enumerate.hpp"
#include "cstar/hn.hpp"
#include "cstar/intersection.hpp"
#include "oracles.hpp"

using namespace cstar;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

void all_chains(int max_len, std::int64_t lo, std::int64_t hi, const std::function<void(const Chain&)>& f) {
    Chain ch;
    std::function<void()> rec = [&] {
        if (!ch.empty()) f(ch);
        if (static_cast<int>(ch.size()) == max_len) return;
        for (std::int64_t w = lo; w <= hi; ++w) {
            ch.push_back(w);
            rec();
            ch.pop_back();
        }
    };
    rec();
}

Outcome discriminant_oracle() {
    std::int64_t n = 0;
    Outcome out;
    all_chains(6, 1, 5, [&](const Chain& ch) {
        ++n;
        if (out.ok && discriminant(ch) != oracle::chain_det(ch)) out = fail("mismatch at " + format_chain(ch));
    });
    if (out.ok) out.detail = std::to_string(n) + " chains";
    return out;
}

Outcome twig_formulas() {
    std::int64_t n = 0;
    for (std::int64_t c = 2; c <= 64; ++c) {
        for (std::int64_t p = 1; p < c; ++p) {
            std::int64_t g = std::gcd(c, p);
            HNBranch b{0, {{c, p}}};
            if (g > 1) b.pairs.push_back({g, 1});
            ResolutionResult res = resolve_branch(b);
            Chain tw = twig_in_graph(res.graph, res.trace.pairs.front()).chain;
            if (discriminant(tw) != c / g || e_twig(tw) != Rational(c - p, c)) {
                return fail("pair (" + std::to_string(c) + "," + std::to_string(p) + ") gives " + format_chain(tw));
            }
            ++n;
        }
    }
    return {true, std::to_string(n) + " pairs"};
}

Outcome multiplicity_formulas() {
    std::mt19937 rng(2024);
    auto pick = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };
    for (int iter = 0; iter < 500; ++iter) {
        HNBranch b;
        b.j = static_cast<int>(pick(0, 3));
        std::int64_t c = pick(2, 64);
        std::int64_t p = pick(1, c - 1);
        b.pairs.push_back({c, p});
        while (std::gcd(c, p) > 1) {
            c = std::gcd(c, p);
            p = pick(1, c);
            if (p == c && b.pairs.size() > 6) p = 1;
            b.pairs.push_back({c, p});
        }
        ResolutionResult res = resolve_branch(b);
        std::int64_t sum = 0;
        std::int64_t sq = 0;
        for (auto m : res.multiplicities) {
            sum += m;
            sq += m * m;
        }
        std::int64_t want_sum = (b.j + 1) * b.c1() - 1;
        std::int64_t want_sq = b.j * b.c1() * b.c1();
        for (const auto& pr : b.pairs) {
            want_sum += pr.p;
            want_sq += pr.c * pr.p;
        }
        if (sum != want_sum || sq != want_sq) return fail("branch " + format_branch(b));
    }
    return {true, "500 branches"};
}

// Bk . V for the vertex v, from the bark coefficients on g.
Rational bark_dot(const WeightedGraph& g, const BarkResult& bk, int v) {
    Rational s;
    for (const auto& [id, coef] : bk.coefficients) {
        if (id == v) s += coef * Rational(-g.weight(v));
        else if (g.has_edge(id, v)) s += coef;
    }
    return s;
}

Outcome bark_consistency() {
    std::int64_t n = 0;
    Outcome out;
    all_chains(5, 2, 5, [&](const Chain& ch) {
        if (!out.ok) return;
        ++n;
        std::int64_t d = oracle::chain_det(ch);
        std::int64_t d1 = oracle::chain_det(Chain(ch.begin() + 1, ch.end()));
        std::int64_t d2 = oracle::chain_det(Chain(ch.begin(), ch.end() - 1));
        BarkResult q = bark_solve(graph_from_chain(ch), BarkMode::Quotient);
        if (-q.square != Rational(d1 + d2 + 2, d)) {
            out = fail("quotient bark of " + format_chain(ch));
            return;
        }
        // The chain as one arm of a fork with arms [2] and [3].
        WeightedGraph g;
        int center = g.add_vertex(1);
        for (const Chain& arm : {Chain{2}, Chain{3}, reversed(ch)}) {
            int prev = center;
            for (auto w : arm) {
                int v = g.add_vertex(w);
                g.add_edge(prev, v);
                prev = v;
            }
        }
        BarkResult t = bark_solve(g, BarkMode::TwigSet);
        if (t.square != -e_value(g)) {
            out = fail("twig bark square of " + format_chain(ch));
            return;
        }
        for (const auto& tw : maximal_twigs(g)) {
            for (std::size_t i = 0; i < tw.ids.size(); ++i) {
                Rational want = i == 0 ? Rational(-1) : Rational(0);
                if (bark_dot(g, t, tw.ids[i]) != want) {
                    out = fail("twig bark of " + format_chain(ch));
                    return;
                }
            }
        }
    });
    if (out.ok) out.detail = std::to_string(n) + " chains";
    return out;
}

EmbeddingCandidate cand(const char* a, const char* b) { return {parse_branch(a), parse_branch(b)}; }

Outcome canned_case(const char* id, const std::set<EmbeddingCandidate>& want, int jt) {
    CaseResult r = run_case(id, 0);
    std::set<EmbeddingCandidate> got;
    for (const auto& s : r.solutions) {
        got.insert(s.candidate);
        if (s.candidate.lambda_tilde.j != jt) return fail("unexpected jt in " + format_candidate(s.candidate));
    }
    if (got != want) return fail(std::to_string(got.size()) + " solutions, expected " + std::to_string(want.size()));
    return {true, std::to_string(got.size()) + " solutions"};
}

Outcome case_00() {
    auto out = canned_case("0j-hh-00",
                           {cand("j:0 pairs:(9,1)", "j:5 pairs:(7,1)"), cand("j:0 pairs:(7,2)", "j:5 pairs:(5,2)"),
                            cand("j:0 pairs:(7,6)", "j:5 pairs:(4,1)")},
                           5);
    if (out.ok) {
        for (const auto& s : run_case("0j-hh-00").solutions)
            if (s.gamma != 5) return fail("gamma " + std::to_string(s.gamma));
    }
    return out;
}

Outcome case_01x() {
    return canned_case("0j-hh-01-x",
                       {cand("j:0 pairs:(6,5)", "j:4 pairs:(4,2)(2,1)"), cand("j:0 pairs:(9,8)", "j:4 pairs:(6,2)(2,1)")},
                       4);
}

Outcome type11_empty() {
    SearchSpec s;
    s.max_degree = 60;
    s.type = *parse_type_pattern("1,1");
    s.stage = Stage::Case;
    s.jobs = 0;
    SearchResult r = enumerate(s);
    if (!r.survivors.empty()) return fail(std::to_string(r.survivors.size()) + " survivors");
    return {true, std::to_string(r.candidates) + " candidates, 0 survivors"};
}

Outcome main_bounds() {
    TheoremCheck check = verify_main_theorem(30, 0);
    if (!check.ok()) return fail(std::to_string(check.counterexamples.size()) + " counterexamples");
    return {true, std::to_string(check.result.survivors.size()) + " survivors, 0 counterexamples"};
}

Outcome pruning_soundness() {
    SearchSpec s;
    s.max_degree = 12;
    s.stage = Stage::Case;
    SearchResult fast = enumerate(s);
    SearchResult slow = brute_oracle(s);
    if (fast.candidates != slow.candidates) return fail("candidate counts differ");
    if (fast.eliminations != slow.eliminations) return fail("elimination counts differ");
    if (fast.survivors != slow.survivors) return fail("survivor sets differ");
    return {true, std::to_string(fast.candidates) + " candidates, " + std::to_string(fast.survivors.size()) +
                      " survivors"};
}

Outcome determinism() {
    SearchSpec s;
    s.max_degree = 30;
    s.stage = Stage::Case;
    s.trace = true;
    s.jobs = 1;
    std::string a = to_jsonl(enumerate(s));
    s.jobs = 8;
    std::string b = to_jsonl(enumerate(s));
    if (a != b) return fail("JSONL differs");
    return {true, std::to_string(a.size()) + " bytes"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"discriminant vs cofactor determinant", 10, discriminant_oracle},
        {"pair twig discriminant and e", 30, twig_formulas},
        {"multiplicity closed forms", 60, multiplicity_formulas},
        {"bark consistency", 60, bark_consistency},
        {"case 0j-hh-00", 60, case_00},
        {"case 0j-hh-01-x", 60, case_01x},
        {"type (1,1) empty to degree 60", 600, type11_empty},
        {"survivor bounds to degree 30", 600, main_bounds},
        {"enumerate equals brute force at degree 12", 300, pruning_soundness},
        {"JSONL identical for 1 and 8 jobs", 600, determinism},
    };

    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (out.ok && secs > c.limit_s) out = fail("took longer than " + std::to_string(c.limit_s) + " s");
        if (!out.ok) ++failures;
        std::printf("%s %2d %-44s %8.2fs  %s\n", out.ok ? "PASS" : "FAIL", index, c.name, secs, out.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
