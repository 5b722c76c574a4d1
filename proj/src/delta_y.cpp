#include "ar3d/delta_y.hpp"

#include <algorithm>
#include <string>

#include "ar3d/error.hpp"

namespace ar3d {

namespace {

// Lexicographically first triangle avoiding frozen vertices, or empty.
// Adjacency lists come out ascending because the edge list is sorted.
std::vector<int> first_triangle(const Graph& g, const std::vector<char>& frozen) {
    auto adj = g.adjacency();
    for (int u = 0; u < g.n(); ++u) {
        if (frozen[u]) continue;
        const auto& nb = adj[u];
        for (size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] < u) continue;
            for (size_t j = i + 1; j < nb.size(); ++j)
                if (g.has_edge(nb[i], nb[j])) return {u, nb[i], nb[j]};
        }
    }
    return {};
}

bool contains(const std::vector<int>& s, int v) {
    return std::find(s.begin(), s.end(), v) != s.end();
}

DeltaYRecord make_record(const Graph& g, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    DeltaYRecord rec;
    rec.members = members;
    for (auto [a, b] : g.edges()) {
        bool ia = contains(members, a), ib = contains(members, b);
        if (ia && ib) rec.induced_edges.push_back({a, b});
        else if (ia) rec.boundary.push_back({a, b});
        else if (ib) rec.boundary.push_back({b, a});
    }
    for (size_t i = 0; i < rec.boundary.size(); ++i)
        for (size_t j = i + 1; j < rec.boundary.size(); ++j)
            if (rec.boundary[i].second == rec.boundary[j].second)
                fail(errc::invariant_broken, "contraction would create a parallel edge");
    rec.relabel.assign(g.n(), -1);
    int next = 0;
    for (int v = 0; v < g.n(); ++v) {
        if (contains(members, v) && v != members[0]) continue;
        rec.relabel[v] = next++;
    }
    return rec;
}

Graph contract(const Graph& g, const DeltaYRecord& rec) {
    int rep = rec.members[0];
    int n_new = 0;
    for (int v : rec.relabel) n_new = std::max(n_new, v + 1);
    Graph out(n_new);
    for (auto [a, b] : g.edges()) {
        int ma = contains(rec.members, a) ? rep : a;
        int mb = contains(rec.members, b) ? rep : b;
        if (ma == mb) continue;
        out.add_edge(rec.relabel[ma], rec.relabel[mb]);
    }
    return out;
}

}  // namespace

std::pair<Graph, DeltaYLog> delta_y_reduce(const Graph& g0) {
    validate(g0, 3);
    Graph g = g0;
    DeltaYLog log;

    std::vector<char> frozen(g.n(), 0);
    {
        int nc;
        auto comp = connected_components(g, &nc);
        for (int c = 0; c < nc; ++c) {
            auto verts = component_vertices(g, comp, c);
            if (verts.size() != 4) continue;
            int cnt = 0;
            for (size_t i = 0; i < 4; ++i)
                for (size_t j = i + 1; j < 4; ++j)
                    if (g.has_edge(verts[i], verts[j])) ++cnt;
            if (cnt == 6)
                for (int v : verts) frozen[v] = 1;
        }
    }

    for (;;) {
        std::vector<int> tri = first_triangle(g, frozen);
        if (tri.empty()) break;
        int u = tri[0], v = tri[1], w = tri[2];

        // Smallest outside vertex adjacent to at least two triangle corners.
        int companion = -1, companion_deg = 0;
        for (int x = 0; x < g.n() && companion < 0; ++x) {
            if (contains(tri, x)) continue;
            int d = g.has_edge(x, u) + g.has_edge(x, v) + g.has_edge(x, w);
            if (d >= 2) {
                companion = x;
                companion_deg = d;
            }
        }

        std::vector<int> members;
        if (companion < 0) {
            members = tri;
        } else if (companion_deg == 3) {
            // All four mutually adjacent: the component is K4 (every member
            // has full degree inside), reached mid-reduction; collapse it.
            members = {u, v, w, companion};
        } else {
            members = {u, v, w, companion};
            // The two tips have one inside slot free each; a shared outside
            // neighbor would make parallel edges, so it joins the set.
            std::vector<int> outs;
            for (int m : members)
                for (int x : g.neighbors(m))
                    if (!contains(members, x)) outs.push_back(x);
            std::sort(outs.begin(), outs.end());
            for (size_t i = 0; i + 1 < outs.size(); ++i)
                if (outs[i] == outs[i + 1]) members.push_back(outs[i]);
        }

        DeltaYRecord rec = make_record(g, members);
        g = contract(g, rec);
        std::vector<char> nf(g.n(), 0);
        for (int x = 0; x < (int)rec.relabel.size(); ++x)
            if (rec.relabel[x] >= 0 && frozen[x]) nf[rec.relabel[x]] = 1;
        frozen = std::move(nf);
        log.records.push_back(std::move(rec));
    }
    return {g, log};
}

Graph delta_y_apply(const Graph& g, const DeltaYRecord& rec) {
    if ((int)rec.relabel.size() != g.n())
        fail(errc::log_mismatch, "relabel table size does not match graph");
    if (rec.members.size() < 3 || rec.members.size() > 5 ||
        !std::is_sorted(rec.members.begin(), rec.members.end()))
        fail(errc::log_mismatch, "bad member list");
    DeltaYRecord fresh = make_record(g, rec.members);
    if (fresh.induced_edges != rec.induced_edges || fresh.boundary != rec.boundary ||
        fresh.relabel != rec.relabel)
        fail(errc::log_mismatch, "record does not describe this graph");
    return contract(g, rec);
}

}  // namespace ar3d
