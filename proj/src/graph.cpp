#include "ar3d/graph.hpp"

#include <algorithm>
#include <string>

#include "ar3d/error.hpp"

namespace ar3d {

Graph::Graph(int n) {
    if (n < 0) fail(errc::bad_input, "negative vertex count " + std::to_string(n));
    n_ = n;
    degree_.assign(n, 0);
    dummy_.assign(n, 0);
}

int Graph::add_vertex(bool dummy) {
    degree_.push_back(0);
    dummy_.push_back(dummy ? 1 : 0);
    return n_++;
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        fail(errc::bad_input, "vertex " + std::to_string(v) + " out of range [0," +
                                  std::to_string(n_) + ")");
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) fail(errc::self_loop, "self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    std::pair<int, int> e{u, v};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e)
        fail(errc::parallel_edge,
             "duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    edges_.insert(it, e);
    ++degree_[u];
    ++degree_[v];
}

void Graph::remove_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u > v) std::swap(u, v);
    std::pair<int, int> e{u, v};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e)
        fail(errc::bad_input,
             "no edge {" + std::to_string(u) + "," + std::to_string(v) + "} to remove");
    edges_.erase(it);
    --degree_[u];
    --degree_[v];
}

bool Graph::has_edge(int u, int v) const { return edge_index(u, v) >= 0; }

int Graph::edge_index(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return -1;
    if (u > v) std::swap(u, v);
    std::pair<int, int> e{u, v};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return -1;
    return static_cast<int>(it - edges_.begin());
}

int Graph::degree(int v) const {
    check_vertex(v);
    return degree_[v];
}

int Graph::max_degree() const {
    int d = 0;
    for (int x : degree_) d = std::max(d, x);
    return d;
}

std::vector<int> Graph::neighbors(int v) const {
    check_vertex(v);
    std::vector<int> out;
    out.reserve(degree_[v]);
    for (auto [a, b] : edges_) {
        if (a == v) out.push_back(b);
        else if (b == v) out.push_back(a);
    }
    return out;
}

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(n_);
    for (int v = 0; v < n_; ++v) adj[v].reserve(degree_[v]);
    for (auto [a, b] : edges_) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

bool Graph::is_dummy(int v) const {
    check_vertex(v);
    return dummy_[v] != 0;
}

int Graph::dummy_count() const {
    int c = 0;
    for (char d : dummy_) c += d;
    return c;
}

bool Graph::is_regular(int d) const {
    for (int v = 0; v < n_; ++v)
        if (degree_[v] != d) return false;
    return true;
}

const Graph& validate(const Graph& g, int degree_bound) {
    for (int v = 0; v < g.n(); ++v) {
        if (g.degree(v) > degree_bound)
            fail(errc::degree_exceeded, "vertex " + std::to_string(v) + " has degree " +
                                            std::to_string(g.degree(v)) + " > bound " +
                                            std::to_string(degree_bound));
    }
    return g;
}

std::vector<int> connected_components(const Graph& g, int* count) {
    std::vector<int> comp(g.n(), -1);
    auto adj = g.adjacency();
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.n(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v]) {
                if (comp[w] < 0) {
                    comp[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    if (count) *count = next;
    return comp;
}

std::vector<int> component_vertices(const Graph& g, const std::vector<int>& comp, int id) {
    std::vector<int> out;
    for (int v = 0; v < g.n(); ++v)
        if (comp[v] == id) out.push_back(v);
    return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
    std::vector<int> pos(g.n(), -1);
    for (size_t i = 0; i < keep.size(); ++i) {
        int v = keep[i];
        if (v < 0 || v >= g.n() || pos[v] >= 0 || (i > 0 && keep[i - 1] >= v))
            fail(errc::bad_input, "keep list must be strictly increasing vertex ids");
        pos[v] = static_cast<int>(i);
    }
    Graph sub(static_cast<int>(keep.size()));
    for (auto [a, b] : g.edges())
        if (pos[a] >= 0 && pos[b] >= 0) sub.add_edge(pos[a], pos[b]);
    return sub;
}

}  // namespace ar3d
