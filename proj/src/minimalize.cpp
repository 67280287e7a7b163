#include "cstar/minimalize.hpp"

#include <random>

namespace cstar {

bool is_contractible(const WeightedGraph& g, int id, const std::set<Label>& protected_labels) {
    const Vertex& v = g.vertex(id);
    if (v.weight != 1 || v.label == Label::E || protected_labels.count(v.label)) return false;
    const auto& ns = g.neighbors(id);
    if (ns.size() > 2) return false;
    if (ns.size() == 2) {
        int a = *ns.begin();
        int b = *ns.rbegin();
        if (g.has_edge(a, b)) return false;
    }
    return true;
}

MinimalizeResult snc_minimalize(const WeightedGraph& g, const MinimalizeOptions& options) {
    MinimalizeResult out{g, {}};
    WeightedGraph& cur = out.graph;
    std::mt19937_64 rng(options.random_seed);

    while (true) {
        std::vector<int> eligible;
        for (int id : cur.vertex_ids()) {
            if (is_contractible(cur, id, options.protected_labels)) eligible.push_back(id);
        }
        if (eligible.empty()) break;

        int pick = eligible.front();
        if (options.random_seed != 0) {
            std::uniform_int_distribution<std::size_t> dist(0, eligible.size() - 1);
            pick = eligible[dist(rng)];
        } else {
            for (int id : eligible) {
                if (cur.label(id) == Label::LineInfty) pick = id;
            }
        }

        std::vector<int> ns(cur.neighbors(pick).begin(), cur.neighbors(pick).end());
        cur.remove_vertex(pick);
        for (int n : ns) cur.set_weight(n, cur.weight(n) - 1);
        if (ns.size() == 2) cur.add_edge(ns[0], ns[1]);
        out.contracted.push_back(pick);
    }
    return out;
}

}  // namespace cstar
