#include "cstar/graph.hpp"

#include <algorithm>
#include <sstream>

#include "cstar/error.hpp"

namespace cstar {

namespace {

struct LabelName {
    Label label;
    const char* name;
};

constexpr LabelName kLabelNames[] = {
    {Label::Plain, "PLAIN"}, {Label::LineInfty, "LINE_INFTY"}, {Label::C, "C"},
    {Label::CTilde, "C_TILDE"}, {Label::E, "E"}, {Label::G, "G"}, {Label::GTilde, "G_TILDE"},
};

}  // namespace

const char* to_string(Label label) {
    for (const auto& ln : kLabelNames) {
        if (ln.label == label) return ln.name;
    }
    return "PLAIN";
}

Label parse_label(std::string_view text) {
    for (const auto& ln : kLabelNames) {
        if (text == ln.name) return ln.label;
    }
    throw Error(ErrorCode::InvalidInput, "unknown vertex label '" + std::string(text) + "'");
}

int WeightedGraph::add_vertex(std::int64_t weight, Label label) {
    int id = next_id_;
    insert_vertex(id, weight, label);
    return id;
}

void WeightedGraph::insert_vertex(int id, std::int64_t weight, Label label) {
    if (contains(id)) throw Error(ErrorCode::InvalidInput, "duplicate vertex id " + std::to_string(id));
    if (label != Label::Plain && find_label(label)) {
        throw Error(ErrorCode::InvalidInput, std::string("label ") + to_string(label) + " used twice");
    }
    vertices_[id] = Vertex{id, weight, label};
    adj_[id];
    next_id_ = std::max(next_id_, id + 1);
}

void WeightedGraph::remove_vertex(int id) {
    for (int n : neighbors(id)) adj_[n].erase(id);
    adj_.erase(id);
    vertices_.erase(id);
}

void WeightedGraph::add_edge(int a, int b) {
    if (a == b) throw Error(ErrorCode::InvalidInput, "self loop on vertex " + std::to_string(a));
    if (!contains(a) || !contains(b)) {
        throw Error(ErrorCode::InvalidInput,
                    "edge " + std::to_string(a) + "-" + std::to_string(b) + " references a missing vertex");
    }
    adj_[a].insert(b);
    adj_[b].insert(a);
}

void WeightedGraph::remove_edge(int a, int b) {
    adj_[a].erase(b);
    adj_[b].erase(a);
}

bool WeightedGraph::has_edge(int a, int b) const {
    auto it = adj_.find(a);
    return it != adj_.end() && it->second.count(b) != 0;
}

bool WeightedGraph::is_marked_edge(int a, int b) const {
    return has_edge(a, b) && (label(a) == Label::E || label(b) == Label::E);
}

const Vertex& WeightedGraph::vertex(int id) const {
    auto it = vertices_.find(id);
    if (it == vertices_.end()) throw Error(ErrorCode::InvalidInput, "no vertex " + std::to_string(id));
    return it->second;
}

void WeightedGraph::set_weight(int id, std::int64_t weight) {
    vertex(id);
    vertices_[id].weight = weight;
}

void WeightedGraph::set_label(int id, Label label) {
    vertex(id);
    if (label != Label::Plain) {
        auto other = find_label(label);
        if (other && *other != id) {
            throw Error(ErrorCode::InvalidInput, std::string("label ") + to_string(label) + " used twice");
        }
    }
    vertices_[id].label = label;
}

std::optional<int> WeightedGraph::find_label(Label label) const {
    for (const auto& [id, v] : vertices_) {
        if (v.label == label) return id;
    }
    return std::nullopt;
}

const std::set<int>& WeightedGraph::neighbors(int id) const {
    auto it = adj_.find(id);
    if (it == adj_.end()) throw Error(ErrorCode::InvalidInput, "no vertex " + std::to_string(id));
    return it->second;
}

std::vector<int> WeightedGraph::vertex_ids() const {
    std::vector<int> ids;
    ids.reserve(vertices_.size());
    for (const auto& [id, v] : vertices_) ids.push_back(id);
    return ids;
}

std::size_t WeightedGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& [id, n] : adj_) twice += n.size();
    return twice / 2;
}

std::vector<std::pair<int, int>> WeightedGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [id, ns] : adj_) {
        for (int n : ns) {
            if (id < n) out.emplace_back(id, n);
        }
    }
    return out;
}

WeightedGraph WeightedGraph::induced(const std::vector<int>& ids) const {
    WeightedGraph sub;
    std::set<int> keep(ids.begin(), ids.end());
    for (int id : keep) {
        const Vertex& v = vertex(id);
        sub.insert_vertex(id, v.weight, v.label);
    }
    for (int id : keep) {
        for (int n : neighbors(id)) {
            if (id < n && keep.count(n)) sub.add_edge(id, n);
        }
    }
    sub.next_id_ = next_id_;
    return sub;
}

std::vector<std::vector<int>> WeightedGraph::components() const {
    std::vector<std::vector<int>> out;
    std::set<int> seen;
    for (const auto& [start, v] : vertices_) {
        if (seen.count(start)) continue;
        std::vector<int> comp;
        std::vector<int> stack{start};
        seen.insert(start);
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            comp.push_back(cur);
            for (int n : neighbors(cur)) {
                if (seen.insert(n).second) stack.push_back(n);
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool WeightedGraph::is_connected() const { return components().size() <= 1; }

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    if (a.vertices_.size() != b.vertices_.size()) return false;
    for (const auto& [id, v] : a.vertices_) {
        auto it = b.vertices_.find(id);
        if (it == b.vertices_.end() || it->second.weight != v.weight || it->second.label != v.label) {
            return false;
        }
    }
    return a.adj_ == b.adj_;
}

std::string to_text(const WeightedGraph& g) {
    std::ostringstream os;
    for (int id : g.vertex_ids()) {
        const Vertex& v = g.vertex(id);
        os << v.id << ' ' << v.weight << ' ' << to_string(v.label) << '\n';
    }
    for (auto [a, b] : g.edges()) os << a << '-' << b << '\n';
    return os.str();
}

WeightedGraph parse_graph_text(std::string_view text) {
    WeightedGraph g;
    std::vector<std::pair<int, int>> pending;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        std::size_t line_start = offset;
        offset += line.size() + 1;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::string body = line.substr(first);
        while (!body.empty() && (body.back() == '\r' || body.back() == ' ' || body.back() == '\t')) {
            body.pop_back();
        }
        auto dash = body.find('-', 1);
        bool is_edge = dash != std::string::npos && body.find(' ') == std::string::npos;
        try {
            if (is_edge) {
                std::size_t used_a = 0;
                std::size_t used_b = 0;
                int a = std::stoi(body.substr(0, dash), &used_a);
                int b = std::stoi(body.substr(dash + 1), &used_b);
                if (used_a != dash || used_b != body.size() - dash - 1) throw std::invalid_argument("edge");
                pending.emplace_back(a, b);
            } else {
                std::istringstream fields(body);
                int id = 0;
                std::int64_t weight = 0;
                std::string label = "PLAIN";
                if (!(fields >> id >> weight)) throw std::invalid_argument("vertex");
                fields >> label;
                std::string extra;
                if (fields >> extra) throw std::invalid_argument("vertex");
                g.insert_vertex(id, weight, parse_label(label));
            }
        } catch (const std::logic_error&) {
            throw ParseError(line_start + first, "malformed line '" + body + "'");
        } catch (const Error& e) {
            throw ParseError(line_start + first, e.what());
        }
    }
    for (auto [a, b] : pending) g.add_edge(a, b);
    return g;
}

std::string to_dot(const WeightedGraph& g, const std::string& name) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    for (int id : g.vertex_ids()) {
        const Vertex& v = g.vertex(id);
        os << "  v" << id << " [label=\"" << id << ": " << -v.weight;
        if (v.label != Label::Plain) os << " " << to_string(v.label);
        os << "\"];\n";
    }
    for (auto [a, b] : g.edges()) {
        os << "  v" << a << " -- v" << b;
        if (g.is_marked_edge(a, b)) os << " [style=dashed]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

WeightedGraph graph_from_chain(const std::vector<std::int64_t>& weights) {
    WeightedGraph g;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        int id = g.add_vertex(weights[i]);
        if (i) g.add_edge(id - 1, id);
    }
    return g;
}

}  // namespace cstar
