#include "cstar/boundary.hpp"

#include <algorithm>
#include <set>

#include "cstar/error.hpp"
#include "cstar/minimalize.hpp"

namespace cstar {

namespace {

bool twig_untouched(const BoundaryGraph& b, const std::vector<int>& ids) {
    return std::all_of(ids.begin(), ids.end(), [&](int id) {
        return b.tree.contains(id) && b.tree.weight(id) == b.before.weight(id);
    });
}

// The neighbour of a last curve that is neither E nor the end of its twig.
int middle_neighbor(const WeightedGraph& g, int last, int e, int twig_end, std::string& problem) {
    std::vector<int> rest;
    for (int n : g.neighbors(last)) {
        if (n != e && n != twig_end) rest.push_back(n);
    }
    if (g.degree(last) != 3 || rest.size() != 1 || !g.has_edge(last, twig_end)) {
        problem = "last curve " + std::to_string(last) + " does not meet exactly E, its twig and Q0";
        return -1;
    }
    return rest.front();
}

}  // namespace

BoundaryGraph assemble_boundary(const EmbeddingCandidate& cand) {
    auto gamma = gamma_prime(cand).value();
    if (!gamma) throw Error(ErrorCode::InvalidInput, "assemble_boundary needs a consistent gamma'");

    BoundaryGraph out;
    WeightedGraph& w = out.before;
    int line = w.add_vertex(-1, Label::LineInfty);
    BranchTrace ta = simulate_branch(w, line, cand.lambda, Label::C);
    BranchTrace tb = simulate_branch(w, line, cand.lambda_tilde, Label::CTilde);
    int e = w.add_vertex(*gamma, Label::E);
    w.add_edge(e, ta.last);
    w.add_edge(e, tb.last);

    QDecomposition& q = out.parts;
    q.c = ta.last;
    q.c_tilde = tb.last;
    q.e = e;
    q.q1 = twig_in_graph(w, ta.pairs.back()).ids;
    q.q1_tilde = twig_in_graph(w, tb.pairs.back()).ids;

    MinimalizeResult m = snc_minimalize(w);
    out.tree = std::move(m.graph);
    out.contracted = std::move(m.contracted);
    const WeightedGraph& t = out.tree;

    for (int id : {q.c, q.c_tilde, q.e}) {
        if (!t.contains(id) || t.weight(id) != w.weight(id)) {
            out.problem = std::string(to_string(w.label(id))) + " was touched by minimalization";
            return out;
        }
    }
    if (t.neighbors(e) != std::set<int>{q.c, q.c_tilde}) {
        out.problem = "E does not meet exactly C and C_TILDE";
        return out;
    }
    if (!twig_untouched(out, q.q1) || !twig_untouched(out, q.q1_tilde)) {
        out.problem = "a last-pair twig was touched by minimalization";
        return out;
    }

    q.g = middle_neighbor(t, q.c, e, q.q1.back(), out.problem);
    if (q.g < 0) return out;
    q.g_tilde = middle_neighbor(t, q.c_tilde, e, q.q1_tilde.back(), out.problem);
    if (q.g_tilde < 0) return out;

    std::set<int> outside{q.c, q.c_tilde, q.e};
    outside.insert(q.q1.begin(), q.q1.end());
    outside.insert(q.q1_tilde.begin(), q.q1_tilde.end());
    for (int id : t.vertex_ids()) {
        if (!outside.count(id)) q.q0.push_back(id);
    }
    if (outside.count(q.g) || outside.count(q.g_tilde)) out.problem = "C or C_TILDE does not meet Q0";
    return out;
}

}  // namespace cstar
