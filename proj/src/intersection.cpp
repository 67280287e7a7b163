#include "cstar/intersection.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "cstar/error.hpp"

namespace cstar {

namespace {

using Wide = __int128;

constexpr Wide kInt64Max = std::numeric_limits<std::int64_t>::max();

Wide mul(Wide a, Wide b) {
    Wide out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "determinant overflow");
    return out;
}

Wide sub(Wide a, Wide b) {
    Wide out = 0;
    if (__builtin_sub_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "determinant overflow");
    return out;
}

std::int64_t narrow(Wide v) {
    if (v > kInt64Max || v < -kInt64Max) throw Error(ErrorCode::Overflow, "determinant overflow");
    return static_cast<std::int64_t>(v);
}

std::vector<std::vector<Wide>> widen(const IntMatrix& m) {
    std::vector<std::vector<Wide>> a(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != m.size()) throw Error(ErrorCode::InvalidInput, "matrix is not square");
        a[i].assign(m[i].begin(), m[i].end());
    }
    return a;
}

// Leaves first, so leading blocks are unions of hanging subtrees.
std::vector<int> elimination_order(const WeightedGraph& g) {
    if (!g.is_forest()) return g.vertex_ids();
    std::map<int, int> deg;
    std::set<int> ready;
    for (int id : g.vertex_ids()) {
        deg[id] = g.degree(id);
        if (deg[id] <= 1) ready.insert(id);
    }
    std::vector<int> order;
    std::set<int> done;
    while (!ready.empty()) {
        int v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        done.insert(v);
        for (int n : g.neighbors(v)) {
            if (done.count(n)) continue;
            if (--deg[n] <= 1) ready.insert(n);
        }
    }
    return order;
}

bool is_path(const WeightedGraph& g) {
    if (g.size() == 0 || !g.is_connected() || !g.is_forest()) return false;
    for (int id : g.vertex_ids()) {
        if (g.degree(id) > 2) return false;
    }
    return true;
}

// Vertices of a path from one end to the other, starting at the lower-id end.
std::vector<int> path_order(const WeightedGraph& g) {
    std::vector<int> ids = g.vertex_ids();
    int start = ids.front();
    for (int id : ids) {
        if (g.degree(id) <= 1) {
            start = id;
            break;
        }
    }
    std::vector<int> order{start};
    int prev = -1;
    int cur = start;
    while (true) {
        int next = -1;
        for (int n : g.neighbors(cur)) {
            if (n != prev) next = n;
        }
        if (next < 0) break;
        order.push_back(next);
        prev = cur;
        cur = next;
    }
    return order;
}

Chain weights_of(const WeightedGraph& g, const std::vector<int>& ids) {
    Chain out;
    out.reserve(ids.size());
    for (int id : ids) out.push_back(g.weight(id));
    return out;
}

// Solves A x = b exactly; throws NotContractible when singular.
std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == Rational(0)) ++pivot;
        if (pivot == n) throw Error(ErrorCode::NotContractible, "bark system is singular");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        Rational inv = a[col][col].reciprocal();
        for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
        b[col] *= inv;
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == Rational(0)) continue;
            Rational f = a[row][col];
            for (std::size_t j = col; j < n; ++j) {
                if (a[col][j] != Rational(0)) a[row][j] -= f * a[col][j];
            }
            b[row] -= f * b[col];
        }
    }
    return b;
}

}  // namespace

IntMatrix neg_intersection_matrix(const WeightedGraph& g, const std::vector<int>& order) {
    IntMatrix m(order.size(), std::vector<std::int64_t>(order.size(), 0));
    for (std::size_t i = 0; i < order.size(); ++i) {
        m[i][i] = g.weight(order[i]);
        for (std::size_t j = 0; j < order.size(); ++j) {
            if (i != j && g.has_edge(order[i], order[j])) m[i][j] = -1;
        }
    }
    return m;
}

std::vector<std::int64_t> leading_minors(const IntMatrix& m, bool stop_on_nonpositive) {
    auto a = widen(m);
    const std::size_t n = a.size();
    std::vector<std::int64_t> minors;
    Wide prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        Wide pivot = a[k][k];
        minors.push_back(narrow(pivot));
        if (pivot == 0 || (stop_on_nonpositive && pivot < 0)) break;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = sub(mul(a[i][j], pivot), mul(a[i][k], a[k][j])) / prev;
            }
        }
        prev = pivot;
    }
    return minors;
}

std::int64_t determinant(const IntMatrix& m) {
    auto a = widen(m);
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Wide prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = sub(mul(a[i][j], a[k][k]), mul(a[i][k], a[k][j])) / prev;
            }
        }
        prev = a[k][k];
    }
    return narrow(sign * a[n - 1][n - 1]);
}

std::int64_t graph_discriminant(const WeightedGraph& g) {
    return determinant(neg_intersection_matrix(g, elimination_order(g)));
}

bool is_negative_definite(const WeightedGraph& g) {
    if (g.size() == 0) return true;
    auto minors = leading_minors(neg_intersection_matrix(g, elimination_order(g)), true);
    return minors.size() == g.size() &&
           std::all_of(minors.begin(), minors.end(), [](std::int64_t v) { return v > 0; });
}

std::vector<Twig> maximal_twigs(const WeightedGraph& g) {
    std::vector<Twig> twigs;
    if (g.size() < 2) return twigs;

    if (is_path(g)) {
        auto order = path_order(g);
        Chain all = weights_of(g, order);
        if (is_admissible(all)) {
            std::size_t k = order.size() / 2;
            std::vector<int> left(order.begin(), order.begin() + static_cast<long>(k));
            std::vector<int> right(order.rbegin(), order.rbegin() + static_cast<long>(k));
            twigs.push_back({left, weights_of(g, left)});
            twigs.push_back({right, weights_of(g, right)});
            return twigs;
        }
    }

    for (int tip : g.vertex_ids()) {
        if (g.degree(tip) != 1 || g.weight(tip) < 2) continue;
        std::vector<int> ids{tip};
        int prev = tip;
        int cur = *g.neighbors(tip).begin();
        while (g.degree(cur) == 2 && g.weight(cur) >= 2) {
            ids.push_back(cur);
            int next = -1;
            for (int n : g.neighbors(cur)) {
                if (n != prev) next = n;
            }
            prev = cur;
            cur = next;
        }
        twigs.push_back({ids, weights_of(g, ids)});
    }
    return twigs;
}

Rational e_value(const WeightedGraph& g) {
    Rational sum;
    for (const auto& t : maximal_twigs(g)) sum += e_twig(t.chain);
    return sum;
}

DeltaResult delta(const WeightedGraph& g) {
    DeltaResult out;
    for (const auto& t : maximal_twigs(g)) {
        out.delta += Rational(1, discriminant(t.chain));
        ++out.twig_count;
    }
    return out;
}

BarkResult bark_solve(const WeightedGraph& component, BarkMode mode) {
    std::vector<int> vars;
    if (mode == BarkMode::Quotient) {
        if (!is_negative_definite(component)) {
            throw Error(ErrorCode::NotContractible, "component is not negative definite");
        }
        vars = component.vertex_ids();
    } else {
        for (const auto& t : maximal_twigs(component)) {
            if (!is_admissible(t.chain)) throw Error(ErrorCode::NotAdmissible, "twig is not admissible");
            vars.insert(vars.end(), t.ids.begin(), t.ids.end());
        }
        std::sort(vars.begin(), vars.end());
    }

    const std::size_t n = vars.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    std::vector<Rational> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                a[i][j] = -component.weight(vars[i]);
            } else if (component.has_edge(vars[i], vars[j])) {
                a[i][j] = 1;
            }
        }
        // (K + D) . Z = beta_Z - 2 for a smooth rational Z.
        rhs[i] = component.degree(vars[i]) - 2;
    }
    auto b = solve(a, rhs);

    BarkResult out;
    for (std::size_t i = 0; i < n; ++i) {
        out.coefficients[vars[i]] = b[i];
        out.square += b[i] * rhs[i];
        if (b[i] < Rational(0) || b[i] >= Rational(1)) out.boundary_case = true;
    }
    return out;
}

std::string ComponentClass::str() const {
    std::ostringstream os;
    switch (tag) {
        case Tag::NotNegativeDefinite: os << "NOT_NEGATIVE_DEFINITE"; break;
        case Tag::Cyclic: os << "CYCLIC(" << d << ")"; break;
        case Tag::Fork:
            os << "FORK(" << branch_weight << ";" << twig_discriminants[0] << "," << twig_discriminants[1]
               << "," << twig_discriminants[2] << ")";
            break;
        case Tag::NotQuotient: os << "NOT_QUOTIENT"; break;
    }
    return os.str();
}

ComponentClass classify_component(const WeightedGraph& component) {
    ComponentClass out;
    if (!is_negative_definite(component)) {
        out.tag = ComponentClass::Tag::NotNegativeDefinite;
        return out;
    }
    out.d = graph_discriminant(component);
    if (!component.is_connected() || !component.is_forest()) return out;

    if (is_path(component)) {
        Chain chain = weights_of(component, path_order(component));
        if (chain == Chain{1}) {
            out.tag = ComponentClass::Tag::Cyclic;
            out.smooth = true;
        } else if (is_admissible(chain)) {
            out.tag = ComponentClass::Tag::Cyclic;
        }
        return out;
    }

    int branch = -1;
    for (int id : component.vertex_ids()) {
        int deg = component.degree(id);
        if (deg > 3) return out;
        if (deg == 3) {
            if (branch >= 0) return out;
            branch = id;
        }
    }
    std::vector<std::int64_t> ds;
    for (int start : component.neighbors(branch)) {
        std::vector<int> ids;
        int prev = branch;
        int cur = start;
        while (true) {
            ids.push_back(cur);
            int next = -1;
            for (int n : component.neighbors(cur)) {
                if (n != prev) next = n;
            }
            if (next < 0) break;
            prev = cur;
            cur = next;
        }
        std::reverse(ids.begin(), ids.end());
        Chain twig = weights_of(component, ids);
        if (!is_admissible(twig)) return out;
        ds.push_back(discriminant(twig));
    }
    std::sort(ds.begin(), ds.end());
    bool platonic = ds[0] == 2 && ((ds[1] == 2) || (ds[1] == 3 && ds[2] >= 3 && ds[2] <= 5));
    if (platonic) {
        out.tag = ComponentClass::Tag::Fork;
        out.branch_weight = component.weight(branch);
        out.twig_discriminants = ds;
    }
    return out;
}

GammaOrder gamma_order_lower(const WeightedGraph& component) {
    GammaOrder out;
    if (!is_negative_definite(component)) {
        out.infinite = true;
        return out;
    }
    out.value = graph_discriminant(component);
    out.exact = classify_component(component).tag == ComponentClass::Tag::Cyclic;
    return out;
}

}  // namespace cstar
