#include "ar3d/layout_deg3_grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ar3d/cycle_cover.hpp"
#include "ar3d/decompose.hpp"
#include "ar3d/error.hpp"

namespace ar3d {

namespace {

const SkewPoint dir_ex{1, 0, 0};
const SkewPoint dir_ey{0, 1, 0};
const SkewPoint dir_ez{0, 0, 1};
const SkewPoint dir_exy{1, -1, 0};   // e_X - e_Y
const SkewPoint dir_eyx{-1, 1, 0};   // e_Y - e_X
const SkewPoint dir_eyz{0, 1, -1};   // e_Y - e_Z

SkewPoint scaled(const SkewPoint& d, long long t) { return {d.a * t, d.b * t, d.c * t}; }

void push_leg(SkewPath& path, const SkewPoint& dir, long long len) {
    if (len <= 0) fail(errc::internal, "nonpositive leg length");
    path.push_back(path.back() + scaled(dir, len));
}

using Obstacle = GridExtensibleState::Obstacle;

// Two unit-capped segments may share at most one point, and only when it is
// the same vertex at both of them. The skew map is linear and injective, so
// running the exact predicates on the coefficient triples is equivalent to
// running them on the Cartesian images.
bool pair_ok(const Obstacle& o, const Obstacle& s) {
    SegmentMeet m = segments_meet_exact(skew_coeffs(o.p), skew_coeffs(o.q), skew_coeffs(s.p),
                                        skew_coeffs(s.q));
    if (!m.meets) return true;
    if (m.overlap || !m.endpoint_endpoint) return false;
    for (int oe = 0; oe < 2; ++oe) {
        const SkewPoint& op = oe ? o.q : o.p;
        int oid = oe ? o.vq : o.vp;
        for (int se = 0; se < 2; ++se) {
            const SkewPoint& sp = se ? s.q : s.p;
            int sid = se ? s.vq : s.vp;
            if (op == sp && oid >= 0 && oid == sid) return true;
        }
    }
    return false;
}

std::vector<Obstacle> path_obstacles(const SkewPath& path, int v_front, int v_back) {
    std::vector<Obstacle> out;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        Obstacle o;
        o.p = path[i];
        o.q = path[i + 1];
        o.vp = i == 0 ? v_front : -1;
        o.vq = i + 2 == path.size() ? v_back : -1;
        out.push_back(o);
    }
    return out;
}

// A candidate path with the vertex ids at its two ends.
struct Candidate {
    SkewPath path;
    int v_front = -1, v_back = -1;
};

}  // namespace

// ---------------------------------------------------------------------------
// flat cycle construction
// ---------------------------------------------------------------------------

namespace {

struct FlatBuild {
    std::vector<SkewPoint> vpos;      // rotated order
    std::vector<SkewPath> epath;      // rotated order
    long long min_a = 0, max_a = 0, min_b = 0, max_b = 0;
};

long long bumped_level(long long level, long long step, const std::set<long long>& forbidden) {
    while (forbidden.count(level)) level += step;
    return level;
}

// flags here are per rotated position: -2 none, -1 reserved window, >=0 pendant id.
std::optional<FlatBuild> flat_attempt(const std::vector<int>& cyc, const std::vector<long long>& x,
                                      const std::vector<int>& flags, const SignLabeling& signs,
                                      const std::set<long long>& forbidden, long long base_len,
                                      bool safe_mode) {
    int k = static_cast<int>(cyc.size());
    FlatBuild fb;
    fb.vpos.assign(k, SkewPoint{});
    fb.epath.assign(k, SkewPath{});
    fb.vpos[0] = SkewPoint{x[0], 0, 0};

    long long span_lo = *std::min_element(x.begin(), x.end());
    long long span_hi = *std::max_element(x.begin(), x.end());
    long long slack = 2 * (k + static_cast<long long>(forbidden.size()) + 4);
    long long gap = (span_hi + slack) - (span_lo - slack) + 2;

    auto head_top = [&](int pos) {
        long long t = fb.vpos[pos].b;
        if (flags[pos] == -1) t += 2;
        if (flags[pos] >= 0) t += 1;
        return t;
    };
    long long topy = head_top(0);

    // Edges 0..k-2 share one walker; edge k-2 takes an extra stretch so the
    // closing edge clears everything, so its run length is decided late.
    auto build_forward = [&](int i, long long run_len) {
        const SkewPoint c = fb.vpos[i];
        long long xi = x[i], xj = x[(i + 1) % k];
        SkewPath p{c};
        if (i == signs.mixed_edge) {
            long long t = (xj > xi ? xj - xi : xi - xj) / 2;
            if (t <= 0) fail(errc::internal, "mixed edge needs distinct x");
            if (xi < xj) {
                push_leg(p, dir_exy, t);
                push_leg(p, dir_ex, t);
            } else {
                push_leg(p, scaled(dir_ex, -1), t);
                push_leg(p, dir_eyx, t);
            }
        } else if (signs.end_signs[i].first > 0) {
            long long level = bumped_level(std::max(xi, xj) + 2, 2, forbidden);
            long long t = (level - xi) / 2;
            push_leg(p, dir_exy, t);
            push_leg(p, dir_ex, t);
            push_leg(p, dir_ey, run_len);
            push_leg(p, dir_eyx, level - xj);
        } else {
            long long level = bumped_level(std::min(xi, xj) - 2, -2, forbidden);
            long long t = (xi - level) / 2;
            push_leg(p, scaled(dir_ex, -1), t);
            push_leg(p, dir_eyx, t);
            push_leg(p, dir_ey, run_len);
            push_leg(p, dir_ex, xj - level);
        }
        fb.epath[i] = p;
        fb.vpos[(i + 1) % k] = p.back();
    };

    auto run_start_y = [&](int i) {
        long long xi = x[i], xj = x[(i + 1) % k];
        if (signs.end_signs[i].first > 0) {
            long long level = bumped_level(std::max(xi, xj) + 2, 2, forbidden);
            return fb.vpos[i].b - (level - xi) / 2;
        }
        long long level = bumped_level(std::min(xi, xj) - 2, -2, forbidden);
        return fb.vpos[i].b + (xi - level) / 2;
    };

    auto pick_run_len = [&](int i) {
        long long len = base_len;
        if (safe_mode) len = std::max(len, topy + gap - run_start_y(i));
        return len;
    };

    auto note_edge = [&](int i) {
        for (const SkewPoint& pt : fb.epath[i]) topy = std::max(topy, pt.b);
        topy = std::max(topy, head_top((i + 1) % k));
    };

    for (int i = 0; i + 2 < k; ++i) {
        build_forward(i, i == signs.mixed_edge ? 0 : pick_run_len(i));
        note_edge(i);
    }

    // Closing-edge frame: x-extents are independent of the run stretches.
    long long minpt = x[0], maxpt = x[0];
    auto widen = [&](long long v) {
        minpt = std::min(minpt, v);
        maxpt = std::max(maxpt, v);
    };
    for (int i = 0; i < k; ++i) widen(x[i]);
    for (int i = 0; i + 1 < k; ++i) {
        long long xi = x[i], xj = x[i + 1];
        if (i == signs.mixed_edge) continue;
        if (signs.end_signs[i].first > 0)
            widen(bumped_level(std::max(xi, xj) + 2, 2, forbidden));
        else
            widen(bumped_level(std::min(xi, xj) - 2, -2, forbidden));
    }

    bool closing_pp = signs.end_signs[k - 1].first > 0;
    long long c_level = closing_pp ? bumped_level(maxpt + 2, 2, forbidden)
                                   : bumped_level(minpt - 2, -2, forbidden);
    long long c_d = closing_pp ? c_level - x[k - 1] : x[k - 1] - c_level;
    long long c_a = closing_pp ? (c_level - x[0]) / 2 : x[0] - c_level - 1;

    // M: everything the closing sweep must clear, except edge k-2 itself.
    long long m_top = head_top(0);
    for (int i = 0; i + 2 < k; ++i) {
        for (const SkewPoint& pt : fb.epath[i]) m_top = std::max(m_top, pt.b);
        m_top = std::max(m_top, head_top(i + 1));
    }
    long long need_dy = closing_pp ? std::max(1 + c_d - c_a, m_top + 1 + c_d)
                                   : std::max<long long>(2, m_top + 1);

    {
        int i = k - 2;
        long long run = i == signs.mixed_edge ? 0 : pick_run_len(i);
        if (i == signs.mixed_edge) fail(errc::internal, "mixed edge landed before closing");
        long long xi = x[i], xj = x[i + 1];
        long long dy_flat;  // Delta y with the current run length
        if (signs.end_signs[i].first > 0) {
            long long level = bumped_level(std::max(xi, xj) + 2, 2, forbidden);
            dy_flat = fb.vpos[i].b - (level - xi) / 2 + run + (level - xj);
        } else {
            long long level = bumped_level(std::min(xi, xj) - 2, -2, forbidden);
            dy_flat = fb.vpos[i].b + (xi - level) / 2 + run;
        }
        run += std::max<long long>(0, need_dy - dy_flat);
        if (closing_pp && x[k - 2] > x[k - 1]) run = std::max(run, c_d + 1);
        build_forward(i, run);
        note_edge(i);
    }

    long long dy = fb.vpos[k - 1].b;
    SkewPath cp{fb.vpos[0]};
    if (closing_pp) {
        push_leg(cp, dir_exy, c_a);
        push_leg(cp, dir_ex, c_level - x[0] - c_a);
        push_leg(cp, dir_ey, dy + c_a - c_d);
        push_leg(cp, dir_eyx, c_d);
    } else {
        push_leg(cp, scaled(dir_ex, -1), c_a);
        push_leg(cp, dir_eyx, 1);
        push_leg(cp, dir_ey, dy - 1);
        push_leg(cp, dir_ex, c_d);
    }
    if (cp.back() != fb.vpos[k - 1]) fail(errc::internal, "closing edge missed its endpoint");
    std::reverse(cp.begin(), cp.end());
    fb.epath[k - 1] = cp;

    // Exact self-check: edge legs, reserved windows and pendant edges must be
    // pairwise disjoint except at shared cycle vertices.
    std::vector<Obstacle> obs;
    std::vector<int> adj_path;  // path index per obstacle, to skip adjacent legs
    for (int i = 0; i < k; ++i) {
        auto po = path_obstacles(fb.epath[i], cyc[i], cyc[(i + 1) % k]);
        for (auto& o : po) {
            obs.push_back(o);
            adj_path.push_back(i);
        }
    }
    for (int i = 0; i < k; ++i) {
        if (flags[i] == -1) {
            obs.push_back({fb.vpos[i], fb.vpos[i] + scaled(dir_ey, 2), cyc[i], -1});
            adj_path.push_back(-1);
        } else if (flags[i] >= 0) {
            obs.push_back({fb.vpos[i], fb.vpos[i] + dir_ey, cyc[i], flags[i]});
            adj_path.push_back(-1);
        }
    }
    auto adjacent_legs = [&](std::size_t i, std::size_t j) {
        if (adj_path[i] < 0 || adj_path[i] != adj_path[j]) return false;
        return obs[i].q == obs[j].p || obs[j].q == obs[i].p;
    };
    for (std::size_t i = 0; i < obs.size(); ++i)
        for (std::size_t j = i + 1; j < obs.size(); ++j) {
            if (adjacent_legs(i, j)) continue;
            if (!pair_ok(obs[i], obs[j])) return std::nullopt;
        }
    // No vertex may sit on foreign material.
    for (int i = 0; i < k; ++i)
        for (std::size_t j = 0; j < obs.size(); ++j) {
            if (obs[j].vp == cyc[i] || obs[j].vq == cyc[i]) continue;
            if (point_on_segment_exact(skew_coeffs(fb.vpos[i]), skew_coeffs(obs[j].p),
                                       skew_coeffs(obs[j].q)))
                return std::nullopt;
        }

    fb.min_a = minpt;
    fb.max_a = maxpt;
    widen(c_level);
    fb.min_a = std::min(fb.min_a, c_level);
    fb.max_a = std::max(fb.max_a, c_level);
    long long blo = 0, bhi = 0;
    for (const auto& o : obs) {
        blo = std::min({blo, o.p.b, o.q.b});
        bhi = std::max({bhi, o.p.b, o.q.b});
    }
    fb.min_b = blo;
    fb.max_b = bhi;
    return fb;
}

FlatCycleFragment flat_build(const std::vector<int>& cycle, const std::vector<long long>& x_in,
                             const std::map<int, int>& pendant_flags,
                             const std::set<long long>& forbidden_in, bool allow_duplicates) {
    int k = static_cast<int>(cycle.size());
    if (k < 3) fail(errc::bad_input, "flat cycle needs length >= 3");
    if (static_cast<int>(x_in.size()) != k) fail(errc::bad_input, "one x-coordinate per vertex");
    for (long long v : x_in)
        if (v % 2 != 0) fail(errc::odd_x, "x-coordinates must be even");
    {
        std::set<long long> seen(x_in.begin(), x_in.end());
        if (static_cast<int>(seen.size()) != k) {
            if (!allow_duplicates) fail(errc::duplicate_x, "x-coordinates must be distinct");
            if (seen.size() == 1) fail(errc::internal, "cycle collapsed to one plane");
        }
    }

    // The mixed edge of an odd cycle needs distinct endpoint planes; rotate it
    // to position 0. Distinct inputs already qualify at 0, so stay put there.
    int rot = 0;
    if (k % 2 == 1) {
        while (rot < k && x_in[rot] == x_in[(rot + 1) % k]) ++rot;
        if (rot == k) fail(errc::internal, "odd cycle with all planes equal");
    }
    std::vector<int> cyc(k);
    std::vector<long long> x(k);
    std::vector<int> flags(k, -2);
    for (int i = 0; i < k; ++i) {
        cyc[i] = cycle[(rot + i) % k];
        x[i] = x_in[(rot + i) % k];
        auto it = pendant_flags.find(cyc[i]);
        if (it != pendant_flags.end()) flags[i] = it->second;
    }

    std::set<long long> forbidden = forbidden_in;
    long long reserved = 0;
    for (int i = 0; i < k; ++i)
        if (flags[i] == -1) {
            forbidden.insert(x[i]);
            ++reserved;
        }

    // Heights order the planes, index-tie-broken so equal planes still rank.
    std::vector<long long> heights(*std::max_element(cyc.begin(), cyc.end()) + 1, 0);
    for (int i = 0; i < k; ++i) heights[cyc[i]] = x[i] * (k + 1) + i;
    SignLabeling signs = sign_labeling_ex(cyc, heights, 0, false);

    // Pending arrivals stack on top of each other later; widen every run in
    // advance so their windows never have to share a level.
    long long base_len = 1 + 2 * reserved;

    std::optional<FlatBuild> fb = flat_attempt(cyc, x, flags, signs, forbidden, base_len, false);
    if (!fb) fb = flat_attempt(cyc, x, flags, signs, forbidden, base_len, true);
    if (!fb) fail(errc::internal, "flat cycle self-intersects in both modes");

    FlatCycleFragment out;
    out.cycle = cycle;
    out.vertex_pos.resize(k);
    out.edge_paths.resize(k);
    for (int i = 0; i < k; ++i) {
        int j = ((i - rot) % k + k) % k;
        out.vertex_pos[i] = fb->vpos[j];
        out.edge_paths[i] = fb->epath[j];
    }
    for (int i = 0; i < k; ++i)
        if (flags[i] >= 0) out.pendant_pos[flags[i]] = fb->vpos[i] + dir_ey;
    out.min_a = fb->min_a;
    out.max_a = fb->max_a;
    out.min_b = fb->min_b;
    out.max_b = fb->max_b;
    return out;
}

}  // namespace

FlatCycleFragment flat_single_cycle(const std::vector<int>& cycle,
                                    const std::vector<long long>& x_coords,
                                    const std::map<int, int>& pendant_flags) {
    return flat_build(cycle, x_coords, pendant_flags, {}, false);
}

// ---------------------------------------------------------------------------
// state bookkeeping
// ---------------------------------------------------------------------------

GridExtensibleState make_grid_state(const Graph& g) {
    validate(g, 3);
    GridExtensibleState st;
    st.graph = g;
    st.placed.assign(g.n(), 0);
    st.exclusive.assign(g.n(), 0);
    st.position.assign(g.n(), SkewPoint{});
    return st;
}

namespace {

std::pair<int, int> edge_key(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

int undrawn_count(const GridExtensibleState& st, int v) {
    int c = 0;
    for (int w : st.graph.neighbors(v))
        if (!st.route.count(edge_key(v, w))) ++c;
    return c;
}

std::vector<int> placed_neighbors(const GridExtensibleState& st, int v) {
    std::vector<int> out;
    for (int w : st.graph.neighbors(v))
        if (st.placed[w]) out.push_back(w);
    return out;
}

int unplaced_neighbor_count(const GridExtensibleState& st, int v) {
    int c = 0;
    for (int w : st.graph.neighbors(v))
        if (!st.placed[w]) ++c;
    return c;
}

void note_point(GridExtensibleState& st, const SkewPoint& p) {
    if (st.empty) {
        st.top_c = p.c;
        st.empty = false;
    } else {
        st.top_c = std::max(st.top_c, p.c);
    }
}

long long fresh_level(GridExtensibleState& st, bool even) {
    long long z = st.next_level;
    if (!st.empty) z = std::max(z, st.top_c + 1);
    if ((z % 2 != 0) == even) ++z;
    st.next_level = z + 1;
    return z;
}

long long fresh_plane(const GridExtensibleState& st) {
    std::set<long long> used;
    for (int v = 0; v < st.graph.n(); ++v)
        if (st.placed[v]) used.insert(st.position[v].a);
    long long x = 0;
    while (used.count(x)) x += 2;
    return x;
}

void reserve_window(GridExtensibleState& st, int v) {
    SkewPoint a = st.position[v], b = a + scaled(dir_ey, 2);
    st.stubs[v] = {a, b};
    st.material.push_back({a, b, v, -1});
    note_point(st, a);
    note_point(st, b);
}

void release_window(GridExtensibleState& st, int v) {
    auto it = st.stubs.find(v);
    if (it == st.stubs.end()) return;
    for (std::size_t i = 0; i < st.material.size(); ++i) {
        const Obstacle& o = st.material[i];
        if (o.vp == v && o.vq == -1 && o.p == it->second.first && o.q == it->second.second) {
            st.material.erase(st.material.begin() + i);
            break;
        }
    }
    st.stubs.erase(it);
}

// Validates a set of candidate paths against the committed drawing and each
// other. Stub windows of the vertices in consume are about to be released and
// are skipped.
bool candidates_clear(const GridExtensibleState& st, const std::vector<Candidate>& cands,
                      const std::set<int>& consume) {
    std::set<std::pair<SkewPoint, SkewPoint>> skip;
    for (int v : consume) {
        auto it = st.stubs.find(v);
        if (it != st.stubs.end()) skip.insert(it->second);
    }

    std::vector<Obstacle> cobs;
    std::vector<std::pair<int, int>> tag;  // candidate index, leg index
    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
        auto po = path_obstacles(cands[ci].path, cands[ci].v_front, cands[ci].v_back);
        for (std::size_t li = 0; li < po.size(); ++li) {
            cobs.push_back(po[li]);
            tag.push_back({static_cast<int>(ci), static_cast<int>(li)});
        }
    }
    for (std::size_t i = 0; i < cobs.size(); ++i)
        for (std::size_t j = i + 1; j < cobs.size(); ++j) {
            if (tag[i].first == tag[j].first && std::abs(tag[i].second - tag[j].second) == 1)
                continue;
            if (!pair_ok(cobs[i], cobs[j])) return false;
        }
    for (const Obstacle& o : st.material) {
        if (o.vq == -1 && o.vp >= 0 && skip.count({o.p, o.q})) continue;
        for (const Obstacle& c : cobs)
            if (!pair_ok(o, c)) return false;
    }
    for (int v = 0; v < st.graph.n(); ++v) {
        if (!st.placed[v]) continue;
        for (const Obstacle& c : cobs) {
            if (c.vp == v || c.vq == v) continue;
            if (point_on_segment_exact(skew_coeffs(st.position[v]), skew_coeffs(c.p),
                                       skew_coeffs(c.q)))
                return false;
        }
    }
    return true;
}

// Stores the path of edge (u,v) given oriented u -> v, plus its obstacles.
void commit_edge(GridExtensibleState& st, int u, int v, SkewPath path) {
    if (path.size() < 2) fail(errc::internal, "degenerate edge path");
    auto key = edge_key(u, v);
    if (u > v) std::reverse(path.begin(), path.end());
    for (const Obstacle& o : path_obstacles(path, key.first, key.second)) st.material.push_back(o);
    for (const SkewPoint& p : path) note_point(st, p);
    st.route[key] = std::move(path);
}

void finish_vertex(GridExtensibleState& st, int v) {
    if (undrawn_count(st, v) == 1 && !st.stubs.count(v)) reserve_window(st, v);
}

void place_vertex(GridExtensibleState& st, int v, const SkewPoint& pos, bool exclusive) {
    st.placed[v] = 1;
    st.exclusive[v] = exclusive ? 1 : 0;
    st.position[v] = pos;
    note_point(st, pos);
}

void rebuild_ray_registry(GridExtensibleState& st) {
    st.ray_owner.clear();
    for (int v = 0; v < st.graph.n(); ++v) {
        if (!st.placed[v] || undrawn_count(st, v) != 1) continue;
        long long plane = st.position[v].a;
        auto [it, fresh] = st.ray_owner.emplace(plane, v);
        if (!fresh)
            fail(errc::invariant_broken, "plane " + std::to_string(plane) +
                                             " holds two active extension rays");
        (void)it;
    }
}

}  // namespace

void check_grid_state(const GridExtensibleState& st) {
    const Graph& g = st.graph;
    for (int v = 0; v < g.n(); ++v) {
        if (st.placed[v]) {
            if (st.position[v].c % 2 != 0)
                fail(errc::invariant_broken, "vertex " + std::to_string(v) + " on an odd level");
            if (undrawn_count(st, v) > 1)
                fail(errc::invariant_broken,
                     "placed vertex " + std::to_string(v) + " has two undrawn edges");
            if (unplaced_neighbor_count(st, v) > 1)
                fail(errc::invariant_broken,
                     "placed vertex " + std::to_string(v) + " has two unplaced neighbors");
        } else if (static_cast<int>(placed_neighbors(st, v).size()) > 1) {
            fail(errc::invariant_broken,
                 "unplaced vertex " + std::to_string(v) + " has two placed neighbors");
        }
    }
    std::map<long long, int> derived;
    for (int v = 0; v < g.n(); ++v) {
        if (!st.placed[v] || undrawn_count(st, v) != 1) continue;
        long long plane = st.position[v].a;
        if (!derived.emplace(plane, v).second)
            fail(errc::invariant_broken, "two rays in plane " + std::to_string(plane));
        if (!st.stubs.count(v))
            fail(errc::invariant_broken, "ray holder " + std::to_string(v) + " lost its window");
        // The ray origin is the rightmost vertex at-or-above its level.
        for (int w = 0; w < g.n(); ++w) {
            if (w == v || !st.placed[w] || st.position[w].a != plane) continue;
            if (st.position[w].c >= st.position[v].c && st.position[w].b >= st.position[v].b)
                fail(errc::invariant_broken,
                     "ray of " + std::to_string(v) + " is not rightmost in its plane");
        }
    }
    if (derived != st.ray_owner) fail(errc::invariant_broken, "ray registry out of date");
}

// ---------------------------------------------------------------------------
// x-coordinate inheritance
// ---------------------------------------------------------------------------

std::map<int, long long> assign_x_coordinates(const GridExtensibleState& st,
                                              const std::vector<int>& cycle) {
    const Graph& g = st.graph;
    std::set<int> in_cycle(cycle.begin(), cycle.end());
    std::map<int, long long> out;
    std::set<long long> used;
    for (int v = 0; v < g.n(); ++v)
        if (st.placed[v]) used.insert(st.position[v].a);

    for (int v : cycle) {
        std::optional<long long> forced;
        std::optional<int> witness;
        auto force = [&](long long x, int via) {
            if (forced && *forced != x)
                fail(errc::conflicting_inheritance,
                     "vertex " + std::to_string(v) + " inherits plane " + std::to_string(*forced) +
                         " via " + std::to_string(*witness) + " and plane " + std::to_string(x) +
                         " via " + std::to_string(via));
            forced = x;
            witness = via;
        };
        for (int w : g.neighbors(v))
            if (st.placed[w]) force(st.position[w].a, w);
        // Walk outward through unplaced intermediates until the walk forks,
        // dies, or reaches either the placed set or an assigned cycle vertex.
        // Forcing happens at any degree; continuing requires a degree-2 link.
        for (int u0 : g.neighbors(v)) {
            if (st.placed[u0] || in_cycle.count(u0)) continue;
            int prev = v, cur = u0;
            for (int hops = 0; hops < g.n(); ++hops) {
                bool stop = false;
                for (int w : g.neighbors(cur)) {
                    if (w == prev) continue;
                    if (st.placed[w]) {
                        force(st.position[w].a, cur);
                        stop = true;
                    } else if (out.count(w)) {
                        force(out.at(w), cur);
                        stop = true;
                    }
                }
                if (stop || g.degree(cur) != 2) break;
                int next = -1;
                for (int w : g.neighbors(cur))
                    if (w != prev) next = w;
                if (next < 0 || in_cycle.count(next)) break;
                prev = cur;
                cur = next;
            }
        }
        long long x;
        if (forced) {
            x = *forced;
        } else {
            x = 0;
            while (used.count(x)) x += 2;
        }
        out[v] = x;
        used.insert(x);
    }
    return out;
}

// ---------------------------------------------------------------------------
// incremental placements
// ---------------------------------------------------------------------------

namespace {

// One new vertex above the drawing, fed by an e_Y leg and a climb; consumes
// the anchor's ray.
bool place_chain(GridExtensibleState& st, int q, int anchor) {
    SkewPoint a = st.position[anchor];
    long long zq = fresh_level(st, true);
    for (long long p = 1; p <= 2; ++p) {
        SkewPoint qpos{a.a, a.b + p, zq};
        SkewPath path{a};
        push_leg(path, dir_ey, p);
        push_leg(path, dir_ez, zq - a.c);
        Candidate c{path, anchor, q};
        if (!candidates_clear(st, {c}, {anchor})) continue;
        release_window(st, anchor);
        place_vertex(st, q, qpos, true);
        commit_edge(st, anchor, q, path);
        finish_vertex(st, q);
        return true;
    }
    return false;
}

// The four-segment ascent from `low` into q's plane position; delta is kept
// minimal so the overshoot above q stays a single unit.
std::optional<Candidate> make_ascend(const GridExtensibleState& st, int low, const SkewPoint& qpos,
                                     long long alpha) {
    SkewPoint l = st.position[low];
    long long delta = 1;
    long long gamma = qpos.b - l.b - alpha - delta;
    if (gamma < 1) return std::nullopt;
    long long beta = qpos.c + delta - l.c;
    if (beta < 1) return std::nullopt;
    SkewPath path{l};
    push_leg(path, dir_ey, alpha);
    push_leg(path, dir_ez, beta);
    push_leg(path, dir_ey, gamma);
    push_leg(path, dir_eyz, delta);
    return Candidate{path, low, -1};
}

std::optional<Candidate> make_onebend(const GridExtensibleState& st, int mid,
                                      const SkewPoint& qpos) {
    SkewPoint m = st.position[mid];
    long long eps = qpos.b - m.b;
    if (eps < 1) return std::nullopt;
    long long zeta = qpos.c - m.c;
    if (zeta < 1) return std::nullopt;
    SkewPath path{m};
    push_leg(path, dir_ey, eps);
    push_leg(path, dir_ez, zeta);
    return Candidate{path, mid, -1};
}

// Descent from q into the reserved window of `high` (same plane, below). The
// plunge column may sit past the window; the tail then walks south along the
// window's ray at the target level.
std::optional<Candidate> make_descent(const GridExtensibleState& st, int high,
                                      const SkewPoint& qpos, long long p_len, long long col_y) {
    SkewPoint h = st.position[high];
    long long r = col_y - qpos.b - p_len;
    if (r < 1) return std::nullopt;
    long long plunge = qpos.c - r - h.c;
    if (plunge < 1) return std::nullopt;
    long long s = col_y - h.b;
    if (s < 1) return std::nullopt;
    SkewPath path{qpos};
    push_leg(path, dir_ey, p_len);
    push_leg(path, dir_eyz, r);
    push_leg(path, scaled(dir_ez, -1), plunge);
    push_leg(path, scaled(dir_ey, -1), s);
    return Candidate{path, -1, high};
}

// Climb out of a west anchor's window, walk north at the fresh level, then
// east into q. The middle run may vanish when q sits exactly p above the
// anchor.
std::optional<Candidate> make_east_in(const GridExtensibleState& st, int w, const SkewPoint& qpos,
                                      long long p) {
    SkewPoint a = st.position[w];
    long long d = qpos.a - a.a;
    if (d < 1) return std::nullopt;
    long long r = qpos.b - a.b - p;
    if (r < 0) return std::nullopt;
    long long zeta = qpos.c - a.c;
    if (zeta < 1) return std::nullopt;
    SkewPath path{a};
    push_leg(path, dir_ey, p);
    push_leg(path, dir_ez, zeta);
    if (r > 0) push_leg(path, dir_ey, r);
    push_leg(path, dir_ex, d);
    return Candidate{path, w, -1};
}

// Climb out of an east anchor's window, walk north at the fresh level, then
// northwest diagonally into q.
std::optional<Candidate> make_west_in(const GridExtensibleState& st, int w, const SkewPoint& qpos,
                                      long long p) {
    SkewPoint a = st.position[w];
    long long d = a.a - qpos.a;
    if (d < 1) return std::nullopt;
    long long r = qpos.b - a.b - p - d;
    if (r < 1) return std::nullopt;
    long long zeta = qpos.c - a.c;
    if (zeta < 1) return std::nullopt;
    SkewPath path{a};
    push_leg(path, dir_ey, p);
    push_leg(path, dir_ez, zeta);
    push_leg(path, dir_ey, r);
    push_leg(path, dir_eyx, d);
    return Candidate{path, w, -1};
}

// Lateral shift of an exclusive vertex's ray at its own level, then a climb.
std::optional<Candidate> make_level_jog(const GridExtensibleState& st, int o,
                                        const SkewPoint& qpos, long long p1) {
    SkewPoint a = st.position[o];
    long long dx = qpos.a - a.a;
    if (dx == 0) return std::nullopt;
    long long jog_dy = dx > 0 ? 0 : -dx;
    long long p2 = qpos.b - a.b - p1 - jog_dy;
    if (p2 < 1) return std::nullopt;
    long long zeta = qpos.c - a.c;
    if (zeta < 1) return std::nullopt;
    SkewPath path{a};
    push_leg(path, dir_ey, p1);
    if (dx > 0)
        push_leg(path, dir_ex, dx);
    else
        push_leg(path, dir_eyx, -dx);
    push_leg(path, dir_ey, p2);
    push_leg(path, dir_ez, zeta);
    return Candidate{path, o, -1};
}

// Climb out of a flat vertex's window to a fresh level, shift east, then
// climb on into q. Only eastward shifts keep every joint legal.
std::optional<Candidate> make_climb_jog(const GridExtensibleState& st, int o, const SkewPoint& qpos,
                                        long long eps, long long jog_c) {
    SkewPoint a = st.position[o];
    long long dx = qpos.a - a.a;
    if (dx <= 0) return std::nullopt;
    if (qpos.b != a.b + eps) return std::nullopt;
    if (jog_c <= a.c || jog_c >= qpos.c) return std::nullopt;
    SkewPath path{a};
    push_leg(path, dir_ey, eps);
    push_leg(path, dir_ez, jog_c - a.c);
    push_leg(path, dir_ex, dx);
    push_leg(path, dir_ez, qpos.c - jog_c);
    return Candidate{path, o, -1};
}

struct MultiPlan {
    SkewPoint qpos;
    std::vector<Candidate> paths;
    std::set<int> consumed;
};

// Upper bound for northward landing-column scans: past every committed b.
long long scan_b_hi(const GridExtensibleState& st) {
    long long hi = 0;
    for (const Obstacle& o : st.material) hi = std::max({hi, o.p.b, o.q.b});
    for (int v = 0; v < st.graph.n(); ++v)
        if (st.placed[v]) hi = std::max(hi, st.position[v].b);
    return hi + 2;
}

// Places a vertex with two or three placed neighbors. Each arriving edge has
// to take a distinct slot of the only legal ray triple, which forces the
// shape assignment up to finite scans.
bool place_multi(GridExtensibleState& st, int q, const std::vector<int>& anchors) {
    std::map<long long, std::vector<int>> by_plane;
    for (int a : anchors) by_plane[st.position[a].a].push_back(a);
    for (auto& [plane, vs] : by_plane)
        std::sort(vs.begin(), vs.end(),
                  [&](int a, int b) { return st.position[a].b < st.position[b].b; });

    auto try_plan = [&](const MultiPlan& plan) {
        if (!candidates_clear(st, plan.paths, plan.consumed)) return false;
        for (int v : plan.consumed) release_window(st, v);
        place_vertex(st, q, plan.qpos, true);
        for (const Candidate& c : plan.paths) commit_edge(st, c.v_front, c.v_back, c.path);
        finish_vertex(st, q);
        return true;
    };
    // The jog level must sit strictly below the new vertex's own level.
    auto fresh_jog_pair = [&](long long& jog_c, long long& zq) {
        jog_c = fresh_level(st, false);
        zq = jog_c + 1;
        st.next_level = std::max(st.next_level, zq + 1);
    };

    if (anchors.size() == 2) {
        int a = anchors[0], b = anchors[1];
        if (st.position[a].a == st.position[b].a) {
            int lo = st.position[a].b < st.position[b].b ? a : b;
            int hi = lo == a ? b : a;
            long long zq = fresh_level(st, true);
            long long bhi = scan_b_hi(st);
            for (int role = 0; role < 2; ++role) {
                int up_v = role == 0 ? lo : hi, ob_v = role == 0 ? hi : lo;
                long long eps_hi = std::max(bhi, st.position[ob_v].b + 8) - st.position[ob_v].b;
                for (long long eps = 1; eps <= eps_hi; ++eps) {
                    SkewPoint qpos{st.position[ob_v].a, st.position[ob_v].b + eps, zq};
                    if (qpos.b < st.position[up_v].b + 3) continue;
                    for (long long alpha = 1; alpha <= 2; ++alpha) {
                        auto up = make_ascend(st, up_v, qpos, alpha);
                        auto ob = make_onebend(st, ob_v, qpos);
                        if (!up || !ob) continue;
                        up->v_back = q;
                        ob->v_back = q;
                        if (try_plan({qpos, {*up, *ob}, {lo, hi}})) return true;
                    }
                }
            }
            return false;
        }
        // Different planes: one anchor owns q's plane, the other arrives on
        // the -e_Z slot by a jog.
        for (int owner : {std::min(a, b), std::max(a, b)}) {
            int other = owner == a ? b : a;
            long long plane = st.position[owner].a;
            long long ybase = st.position[owner].b + 3;
            if (st.exclusive[other]) {
                long long zq = fresh_level(st, true);
                for (long long off = 0; off < 8; ++off) {
                    long long dx = plane - st.position[other].a;
                    long long jog_dy = dx > 0 ? 0 : -dx;
                    long long ymin = std::max(ybase, st.position[other].b + 1 + jog_dy + 1);
                    SkewPoint qpos{plane, ymin + off, zq};
                    for (long long alpha = 1; alpha <= 2; ++alpha)
                        for (long long p1 = 1; p1 <= qpos.b - st.position[other].b; ++p1) {
                            auto up = make_ascend(st, owner, qpos, alpha);
                            auto jg = make_level_jog(st, other, qpos, p1);
                            if (!up || !jg) continue;
                            up->v_back = q;
                            jg->v_back = q;
                            if (try_plan({qpos, {*up, *jg}, {owner, other}})) return true;
                        }
                }
            } else {
                long long jog_c = 0, zqj = 0;
                fresh_jog_pair(jog_c, zqj);
                for (long long eps = 1; eps <= 2; ++eps) {
                    SkewPoint qpos{plane, st.position[other].b + eps, zqj};
                    if (qpos.b < ybase) continue;
                    for (long long alpha = 1; alpha <= 2; ++alpha) {
                        auto up = make_ascend(st, owner, qpos, alpha);
                        auto cj = make_climb_jog(st, other, qpos, eps, jog_c);
                        if (!up || !cj) continue;
                        up->v_back = q;
                        cj->v_back = q;
                        if (try_plan({qpos, {*up, *cj}, {owner, other}})) return true;
                    }
                }
            }
        }
        return false;
    }

    // Three placed neighbors: one plane must hold at least two of them; the
    // pair take the ascend and descent slots, the leftover takes -e_Z. Slot
    // assignments and landing columns are scanned canonical-first, so the
    // richer fallbacks only engage where the tight shapes wedge (for example
    // a pair sharing one b, which no ascend/onebend pairing can serve).
    for (auto& [plane, vs] : by_plane) {
        if (vs.size() < 2) continue;
        long long cy_hi = scan_b_hi(st);
        if (vs.size() == 3) {
            long long zq = fresh_level(st, true);
            static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                            {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
            for (auto& pm : perms) {
                int up_v = vs[pm[0]], ob_v = vs[pm[1]], dn_v = vs[pm[2]];
                for (long long eps = 1; eps <= 2; ++eps) {
                    SkewPoint qpos{plane, st.position[ob_v].b + eps, zq};
                    if (qpos.b < st.position[up_v].b + 3) continue;
                    long long chi = std::max(cy_hi, qpos.b + 8);
                    for (long long alpha = 1; alpha <= 2; ++alpha)
                        for (long long pp = 1; pp <= 2; ++pp)
                            for (long long cy = st.position[dn_v].b + 1; cy <= chi; ++cy) {
                                auto up = make_ascend(st, up_v, qpos, alpha);
                                auto ob = make_onebend(st, ob_v, qpos);
                                auto dn = make_descent(st, dn_v, qpos, pp, cy);
                                if (!up || !ob || !dn) continue;
                                up->v_back = q;
                                ob->v_back = q;
                                dn->v_front = q;
                                if (try_plan({qpos, {*up, *ob, *dn}, {vs[0], vs[1], vs[2]}}))
                                    return true;
                            }
                }
            }
            continue;
        }
        int lo = vs[0], hi = vs[1];
        int other = -1;
        for (int v : anchors)
            if (v != lo && v != hi) other = v;
        if (st.exclusive[other]) {
            long long dx = plane - st.position[other].a;
            long long jog_dy = dx > 0 ? 0 : -dx;
            long long zq = fresh_level(st, true);
            for (int role = 0; role < 2; ++role) {
                int up_v = role == 0 ? lo : hi, dn_v = role == 0 ? hi : lo;
                long long ymin =
                    std::max(st.position[up_v].b + 3, st.position[other].b + 2 + jog_dy);
                long long yq_hi = std::max(st.position[dn_v].b, ymin) + 6;
                for (long long yq = ymin; yq <= yq_hi; ++yq) {
                    SkewPoint qpos{plane, yq, zq};
                    long long chi = std::max(cy_hi, qpos.b + 8);
                    for (long long alpha = 1; alpha <= 2; ++alpha)
                        for (long long p1 = 1; p1 <= qpos.b - st.position[other].b; ++p1)
                            for (long long pp = 1; pp <= 2; ++pp)
                                for (long long cy = st.position[dn_v].b + 1; cy <= chi; ++cy) {
                                    auto up = make_ascend(st, up_v, qpos, alpha);
                                    auto jg = make_level_jog(st, other, qpos, p1);
                                    auto dn = make_descent(st, dn_v, qpos, pp, cy);
                                    if (!up || !jg || !dn) continue;
                                    up->v_back = q;
                                    jg->v_back = q;
                                    dn->v_front = q;
                                    if (try_plan({qpos, {*up, *jg, *dn}, {lo, hi, other}}))
                                        return true;
                                }
                }
            }
        } else {
            long long jog_c = 0, zq = 0;
            fresh_jog_pair(jog_c, zq);
            for (int role = 0; role < 2; ++role) {
                int up_v = role == 0 ? lo : hi, dn_v = role == 0 ? hi : lo;
                for (long long eps = 1; eps <= 2; ++eps) {
                    SkewPoint qpos{plane, st.position[other].b + eps, zq};
                    if (qpos.b < st.position[up_v].b + 3) continue;
                    long long chi = std::max(cy_hi, qpos.b + 8);
                    for (long long alpha = 1; alpha <= 2; ++alpha)
                        for (long long pp = 1; pp <= 2; ++pp)
                            for (long long cy = st.position[dn_v].b + 1; cy <= chi; ++cy) {
                                auto up = make_ascend(st, up_v, qpos, alpha);
                                auto cj = make_climb_jog(st, other, qpos, eps, jog_c);
                                auto dn = make_descent(st, dn_v, qpos, pp, cy);
                                if (!up || !cj || !dn) continue;
                                up->v_back = q;
                                cj->v_back = q;
                                dn->v_front = q;
                                if (try_plan({qpos, {*up, *cj, *dn}, {lo, hi, other}})) return true;
                            }
                }
            }
        }
    }

    // Three anchors in three distinct planes. No classic slot assignment can
    // serve two cross-plane arrivals, but the in-level ray triple can: the
    // median-plane anchor hosts q's plane and q descends into its window,
    // while the outer anchors climb to the fresh level and walk in from
    // either side. q ends fully drawn, so it needs no window of its own.
    if (anchors.size() == 3 && by_plane.size() == 3) {
        std::vector<int> ordered;
        for (auto& [plane, vs] : by_plane) ordered.push_back(vs[0]);
        int west = ordered[0], host = ordered[1], east = ordered[2];
        long long plane = st.position[host].a;
        long long wdx = st.position[east].a - plane;
        long long zq = fresh_level(st, true);
        long long ymin = std::max(st.position[west].b + 1, st.position[east].b + 2 + wdx);
        long long cy_hi = scan_b_hi(st);
        for (long long yq = ymin; yq <= ymin + 8; ++yq) {
            SkewPoint qpos{plane, yq, zq};
            long long chi = std::max(cy_hi, qpos.b + 8);
            for (long long pe = 1; pe <= 4; ++pe)
                for (long long pw = 1; pw <= 4; ++pw)
                    for (long long pp = 1; pp <= 2; ++pp)
                        for (long long cy = st.position[host].b + 1; cy <= chi; ++cy) {
                            auto ein = make_east_in(st, west, qpos, pe);
                            auto win = make_west_in(st, east, qpos, pw);
                            auto dn = make_descent(st, host, qpos, pp, cy);
                            if (!ein || !win || !dn) continue;
                            ein->v_back = q;
                            win->v_back = q;
                            dn->v_front = q;
                            if (try_plan({qpos, {*ein, *win, *dn}, {west, host, east}}))
                                return true;
                        }
        }
    }
    return false;
}

bool place_seed(GridExtensibleState& st, int q) {
    SkewPoint qpos{fresh_plane(st), 0, fresh_level(st, true)};
    place_vertex(st, q, qpos, true);
    finish_vertex(st, q);
    return true;
}

// Absorbs every vertex the double-adjacency closure admits; with_seeds also
// starts fresh components at leaves and isolated vertices. Candidates with
// two or three placed neighbors go first, lowest anchor ceiling leading:
// later placements must clear earlier ones from above, so keeping early
// arrivals low preserves the descent windows of the rest. A candidate that
// finds no collision-free realization is skipped while any other succeeds.
void absorb_closure(GridExtensibleState& st, bool with_seeds) {
    const Graph& g = st.graph;
    for (;;) {
        struct Cand {
            long long key0 = 0, key1 = 0;
            int v = -1;
        };
        std::vector<Cand> order;
        for (int v = 0; v < g.n(); ++v) {
            if (st.placed[v]) continue;
            int np = static_cast<int>(placed_neighbors(st, v).size());
            int nu = unplaced_neighbor_count(st, v);
            if (np >= 2) {
                long long ceiling = 0;
                for (int w : g.neighbors(v))
                    if (st.placed[w]) ceiling = std::max(ceiling, st.position[w].b);
                order.push_back({0, ceiling, v});
            } else if (np == 1 && nu <= 1) {
                order.push_back({1, 0, v});
            } else if (with_seeds && np == 0 && g.degree(v) <= 1) {
                order.push_back({2, 0, v});
            }
        }
        if (order.empty()) return;
        std::sort(order.begin(), order.end(), [](const Cand& a, const Cand& b) {
            if (a.key0 != b.key0) return a.key0 < b.key0;
            if (a.key1 != b.key1) return a.key1 < b.key1;
            return a.v < b.v;
        });
        bool progressed = false;
        for (const Cand& c : order) {
            std::vector<int> anchors = placed_neighbors(st, c.v);
            bool done = false;
            if (anchors.size() >= 2)
                done = place_multi(st, c.v, anchors);
            else if (anchors.size() == 1)
                done = place_chain(st, c.v, anchors[0]);
            else
                done = place_seed(st, c.v);
            if (done) {
                progressed = true;
                break;
            }
        }
        if (!progressed)
            fail(errc::internal, "no collision-free attachment for any closure vertex");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// add_flat_cycle
// ---------------------------------------------------------------------------

void add_flat_cycle(GridExtensibleState& st, const std::vector<int>& cycle) {
    const Graph& g = st.graph;
    int k = static_cast<int>(cycle.size());
    if (k < 3) fail(errc::bad_input, "cycle too short");
    for (int v : cycle)
        if (st.placed[v]) fail(errc::bad_input, "cycle vertex already placed");

    std::map<int, long long> xs = assign_x_coordinates(st, cycle);
    std::vector<long long> x(k);
    for (int i = 0; i < k; ++i) x[i] = xs.at(cycle[i]);

    // Third-neighbor handling decides the window flags: placed neighbors get
    // a descent now, degree-one neighbors become pendants, anything else
    // reserves the window for a later arrival.
    std::set<int> in_cycle(cycle.begin(), cycle.end());
    std::map<int, int> flags;
    std::vector<std::pair<int, int>> direct;  // cycle vertex -> placed target
    for (int i = 0; i < k; ++i) {
        int v = cycle[i];
        for (int t : g.neighbors(v)) {
            if (t == cycle[(i + 1) % k] || t == cycle[(i + k - 1) % k]) continue;
            if (in_cycle.count(t))
                fail(errc::bad_input, "cycle has a chord");
            if (st.placed[t]) {
                flags[v] = -1;
                direct.push_back({v, t});
            } else if (g.degree(t) == 1) {
                flags[v] = t;
            } else {
                flags[v] = -1;
            }
        }
    }

    std::set<long long> forbidden;
    for (int v = 0; v < g.n(); ++v)
        if (st.placed[v] && undrawn_count(st, v) >= 1) forbidden.insert(st.position[v].a);

    FlatCycleFragment frag = flat_build(cycle, x, flags, forbidden, true);

    // Shift the fragment down until every descent target sits at-or-above its
    // source, then pick a level band wide enough for all the descent diagonals.
    long long tau = 0;
    for (auto [v, t] : direct) {
        int i = static_cast<int>(std::find(cycle.begin(), cycle.end(), v) - cycle.begin());
        if (st.position[t].a != x[i])
            fail(errc::internal, "descent target not in the inherited plane");
        tau = std::min(tau, st.position[t].b - frag.vertex_pos[i].b);
    }
    long long dive_budget = 0;
    for (auto [v, t] : direct) {
        int i = static_cast<int>(std::find(cycle.begin(), cycle.end(), v) - cycle.begin());
        dive_budget =
            std::max(dive_budget, st.position[t].b + 2 - (frag.vertex_pos[i].b + tau) - 1);
    }
    long long width = frag.max_b - frag.min_b;
    long long zc = 0;
    if (!st.empty) {
        zc = std::max({st.top_c + 2 * width + 4, st.top_c + dive_budget + 2, st.next_level});
        if (zc % 2 != 0) ++zc;
    }
    SkewPoint shift{0, tau, zc};

    for (int i = 0; i < k; ++i) place_vertex(st, cycle[i], frag.vertex_pos[i] + shift, false);
    for (auto& [pid, pos] : frag.pendant_pos) place_vertex(st, pid, pos + shift, false);
    st.next_level = std::max(st.next_level, zc + 1);
    for (int i = 0; i < k; ++i) {
        SkewPath p = frag.edge_paths[i];
        for (SkewPoint& pt : p) pt = pt + shift;
        commit_edge(st, cycle[i], cycle[(i + 1) % k], p);
    }
    for (auto& [pid, pos] : frag.pendant_pos) {
        int v = -1;
        for (auto& [cv, f] : flags)
            if (f == pid) v = cv;
        SkewPath p{st.position[v], st.position[v] + dir_ey};
        commit_edge(st, v, pid, p);
    }
    for (auto& [cv, f] : flags)
        if (f == -1) reserve_window(st, cv);

    // Descents from flagged cycle vertices into the reserved windows of their
    // already-placed neighbors.
    for (auto [v, t] : direct) {
        SkewPoint vp = st.position[v], tp = st.position[t];
        // The plunge column may land past the window; the tail then walks south
        // along the window's ray at the target level. Any committed point at an
        // intermediate level can block a column, so scan well past the densest b.
        long long cy_hi = std::max(scan_b_hi(st), std::max(tp.b, vp.b) + 8);
        bool done = false;
        for (long long cy = tp.b + 1; cy <= cy_hi && !done; ++cy)
            for (long long p_len = 1; p_len <= 2 && !done; ++p_len) {
                long long r = cy - vp.b - p_len;
                if (r < 1) continue;
                long long plunge = vp.c - r - tp.c;
                if (plunge < 1) continue;
                SkewPath path{vp};
                push_leg(path, dir_ey, p_len);
                push_leg(path, dir_eyz, r);
                push_leg(path, scaled(dir_ez, -1), plunge);
                push_leg(path, scaled(dir_ey, -1), cy - tp.b);
                Candidate c{path, v, t};
                if (!candidates_clear(st, {c}, {v, t})) continue;
                release_window(st, v);
                release_window(st, t);
                commit_edge(st, v, t, path);
                done = true;
            }
        if (!done)
            fail(errc::internal, "connector " + std::to_string(v) + "-" + std::to_string(t) +
                                     " found no free window column");
    }

    absorb_closure(st, false);
    rebuild_ray_registry(st);
    check_grid_state(st);
}

// ---------------------------------------------------------------------------
// K4 components and the driver
// ---------------------------------------------------------------------------

namespace {

// K4 admits no flat cycle with a connectable apex, but fits a single
// vertical plane: three spokes from one hub plus three bent arcs, all joints
// at 120 degrees and all four vertices on even levels.
void place_k4(GridExtensibleState& st, const std::vector<int>& comp) {
    long long xp = fresh_plane(st);
    long long base = st.next_level;
    if (!st.empty) base = std::max(base, st.top_c + 1);
    long long zb = base + 4;
    if (zb % 2 != 0) ++zb;

    auto pt = [&](long long h, long long y) { return SkewPoint{xp, y, zb + h}; };
    int A = comp[0], B = comp[1], C = comp[2], D = comp[3];
    place_vertex(st, A, pt(-2, 0), false);
    place_vertex(st, B, pt(0, 2), false);
    place_vertex(st, C, pt(2, -2), false);
    place_vertex(st, D, pt(0, 0), false);

    commit_edge(st, D, A, {pt(0, 0), pt(-2, 0)});
    commit_edge(st, D, B, {pt(0, 0), pt(0, 2)});
    commit_edge(st, D, C, {pt(0, 0), pt(2, -2)});
    commit_edge(st, A, B, {pt(-2, 0), pt(-3, 1), pt(-3, 3), pt(-1, 3), pt(0, 2)});
    commit_edge(st, A, C, {pt(-2, 0), pt(-2, -2), pt(-1, -3), pt(2, -3), pt(2, -2)});
    commit_edge(st, C, B, {pt(2, -2), pt(3, -2), pt(3, 1), pt(2, 2), pt(0, 2)});
}

}  // namespace

Drawing layout_deg3_grid(const Graph& g) {
    validate(g, 3);
    GridExtensibleState st = make_grid_state(g);

    int comp_count = 0;
    std::vector<int> comp = connected_components(g, &comp_count);
    for (int c = 0; c < comp_count; ++c) {
        std::vector<int> vs = component_vertices(g, comp, c);
        if (vs.size() == 4 && g.degree(vs[0]) == 3 && g.degree(vs[1]) == 3 &&
            g.degree(vs[2]) == 3 && g.degree(vs[3]) == 3)
            place_k4(st, vs);
    }

    for (;;) {
        absorb_closure(st, true);
        std::vector<int> rest;
        for (int v = 0; v < g.n(); ++v)
            if (!st.placed[v]) rest.push_back(v);
        if (rest.empty()) break;
        Graph sub = induced_subgraph(g, rest);
        std::vector<int> cyc = shortest_chordless_cycle(sub);
        for (int& v : cyc) v = rest[v];
        add_flat_cycle(st, cyc);
    }
    rebuild_ray_registry(st);
    check_grid_state(st);

    Drawing d;
    d.graph = g;
    d.positions.resize(g.n());
    for (int v = 0; v < g.n(); ++v) d.positions[v] = to_vec(skew_point_to_cartesian(st.position[v]));
    d.routes.reserve(g.m());
    for (const auto& [u, v] : g.edges()) {
        const SkewPath& p = st.route.at({u, v});
        Polyline line;
        line.reserve(p.size());
        for (const SkewPoint& sp : p) line.push_back(to_vec(skew_point_to_cartesian(sp)));
        d.routes.push_back(std::move(line));
    }
    d.repr = Repr::integer;
    d.frame = FrameTag::cartesian;
    d.algorithm = "deg3-grid";
    d.seed = 0;
    d.n_augmented = -1;
    return d;
}

}  // namespace ar3d
