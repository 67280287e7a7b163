#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cstar/chain.hpp"
#include "cstar/graph.hpp"
#include "cstar/rational.hpp"

namespace cstar {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// -Q with rows in the given vertex order.
IntMatrix neg_intersection_matrix(const WeightedGraph& g, const std::vector<int>& order);

// Fraction-free elimination without pivoting; the k-th pivot is the k-th
// leading principal minor. Returns the minors that were computed, stopping
// early after the first nonpositive one when stop_on_nonpositive is set.
std::vector<std::int64_t> leading_minors(const IntMatrix& m, bool stop_on_nonpositive = false);
std::int64_t determinant(const IntMatrix& m);

// det(-Q(g)); 1 for the empty graph.
std::int64_t graph_discriminant(const WeightedGraph& g);
bool is_negative_definite(const WeightedGraph& g);

struct Twig {
    std::vector<int> ids;  // tip first
    Chain chain;
};

// Maximal admissible twigs. For a fully admissible chain of n vertices each
// end contributes floor(n/2) components, so the two twigs never overlap.
std::vector<Twig> maximal_twigs(const WeightedGraph& g);

// Sum of e over the maximal admissible twigs.
Rational e_value(const WeightedGraph& g);

struct DeltaResult {
    Rational delta;
    int twig_count = 0;
};
DeltaResult delta(const WeightedGraph& g);

enum class BarkMode { TwigSet, Quotient };

struct BarkResult {
    std::map<int, Rational> coefficients;
    Rational square;
    // A coefficient outside [0,1) appeared (e.g. a lone (-2)-curve).
    bool boundary_case = false;
};

BarkResult bark_solve(const WeightedGraph& component, BarkMode mode);

struct ComponentClass {
    enum class Tag { NotNegativeDefinite, Cyclic, Fork, NotQuotient };
    Tag tag = Tag::NotQuotient;
    std::int64_t d = 0;              // cyclic order or discriminant
    std::int64_t branch_weight = 0;  // forks only
    std::vector<std::int64_t> twig_discriminants;  // forks only, sorted
    bool smooth = false;  // the chain [1]

    bool is_quotient() const { return tag == Tag::Cyclic || tag == Tag::Fork; }
    std::string str() const;
};

ComponentClass classify_component(const WeightedGraph& component);

struct GammaOrder {
    bool infinite = false;
    std::int64_t value = 0;
    bool exact = false;
};

// d(T) as a lower bound for the order of the local fundamental group.
GammaOrder gamma_order_lower(const WeightedGraph& component);

}  // namespace cstar
