#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cstar {

enum class Label { Plain, LineInfty, C, CTilde, E, G, GTilde };

const char* to_string(Label label);
Label parse_label(std::string_view text);

struct Vertex {
    int id = 0;
    std::int64_t weight = 0;  // -V^2
    Label label = Label::Plain;
};

// Vertex-weighted simple graph. The boundary D+E carries one cycle through E;
// the two edges incident to the E vertex are the marked cycle edges and
// everything else is expected to be a forest.
class WeightedGraph {
public:
    int add_vertex(std::int64_t weight, Label label = Label::Plain);
    void insert_vertex(int id, std::int64_t weight, Label label = Label::Plain);
    void remove_vertex(int id);

    void add_edge(int a, int b);
    void remove_edge(int a, int b);
    bool has_edge(int a, int b) const;
    bool is_marked_edge(int a, int b) const;

    bool contains(int id) const { return vertices_.count(id) != 0; }
    const Vertex& vertex(int id) const;
    std::int64_t weight(int id) const { return vertex(id).weight; }
    void set_weight(int id, std::int64_t weight);
    Label label(int id) const { return vertex(id).label; }
    void set_label(int id, Label label);
    std::optional<int> find_label(Label label) const;

    const std::set<int>& neighbors(int id) const;
    int degree(int id) const { return static_cast<int>(neighbors(id).size()); }

    std::vector<int> vertex_ids() const;
    std::size_t size() const { return vertices_.size(); }
    std::size_t edge_count() const;
    std::vector<std::pair<int, int>> edges() const;

    WeightedGraph induced(const std::vector<int>& ids) const;
    std::vector<std::vector<int>> components() const;
    bool is_connected() const;
    bool is_forest() const { return edge_count() + components().size() == size(); }

    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

private:
    std::map<int, Vertex> vertices_;
    std::map<int, std::set<int>> adj_;
    int next_id_ = 0;
};

// Text form: "id weight label" per vertex, then "a-b" per edge.
std::string to_text(const WeightedGraph& g);
WeightedGraph parse_graph_text(std::string_view text);
std::string to_dot(const WeightedGraph& g, const std::string& name = "boundary");

// Path graph with consecutive ids starting at 0.
WeightedGraph graph_from_chain(const std::vector<std::int64_t>& weights);

}  // namespace cstar
