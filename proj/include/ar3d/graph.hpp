#pragma once

#include <utility>
#include <vector>

namespace ar3d {

// Simple undirected graph on dense vertex ids 0..n-1.  Edges are kept as a
// sorted list of (u,v) pairs with u < v, so the position of an edge in
// edges() is a stable key that layout code uses to index per-edge routes.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    // Returns the id of the new vertex.
    int add_vertex(bool dummy = false);
    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    bool has_edge(int u, int v) const;
    // Position of {u,v} in edges(), or -1.
    int edge_index(int u, int v) const;
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    int degree(int v) const;
    int max_degree() const;
    std::vector<int> neighbors(int v) const;
    std::vector<std::vector<int>> adjacency() const;

    bool is_dummy(int v) const;
    int dummy_count() const;

    bool is_regular(int d) const;

private:
    void check_vertex(int v) const;

    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> degree_;
    std::vector<char> dummy_;
};

// Returns g unchanged iff it is simple (guaranteed by construction) and no
// vertex exceeds degree_bound; throws DegreeExceeded otherwise.
const Graph& validate(const Graph& g, int degree_bound);

// Component id per vertex, ids dense from 0 in order of smallest member.
std::vector<int> connected_components(const Graph& g, int* count = nullptr);

// Vertices of one component, ascending.
std::vector<int> component_vertices(const Graph& g, const std::vector<int>& comp, int id);

// Induced subgraph on the strictly increasing vertex list keep; vertex i of
// the result is keep[i].
Graph induced_subgraph(const Graph& g, const std::vector<int>& keep);

}  // namespace ar3d
