#include "ctxlab/scenario.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ctxlab {

Scenario::Scenario(int d, std::vector<std::string> vertex_ids,
                   std::vector<std::tuple<std::string, std::string, std::string>> edges)
    : d_(d), vertex_ids_(std::move(vertex_ids)) {
    if (d_ < 2) throw ParseError("outcome count d must be at least 2");
    for (int v = 0; v < num_vertices(); ++v) {
        if (vertex_ids_[v].empty()) throw ParseError("empty vertex id");
        if (!vertex_by_id_.emplace(vertex_ids_[v], v).second)
            throw ParseError("duplicate vertex id: " + vertex_ids_[v]);
    }
    for (auto& [id, src, tgt] : edges) {
        if (id.empty()) throw ParseError("empty edge id");
        auto s = vertex_by_id_.find(src);
        auto t = vertex_by_id_.find(tgt);
        if (s == vertex_by_id_.end()) throw ParseError("edge " + id + " has unknown source " + src);
        if (t == vertex_by_id_.end()) throw ParseError("edge " + id + " has unknown target " + tgt);
        if (!edge_by_id_.emplace(id, static_cast<int>(edges_.size())).second)
            throw ParseError("duplicate edge id: " + id);
        edges_.push_back({id, s->second, t->second});
    }
    incident_.resize(num_vertices());
    for (int e = 0; e < num_edges(); ++e) {
        incident_[edges_[e].source].push_back({e, 0});
        incident_[edges_[e].target].push_back({e, 1});
    }
}

std::vector<std::tuple<std::string, std::string, std::string>> Scenario::edge_triples() const {
    std::vector<std::tuple<std::string, std::string, std::string>> r;
    for (auto& e : edges_) r.emplace_back(e.id, vertex_ids_[e.source], vertex_ids_[e.target]);
    return r;
}

int Scenario::vertex_index(const std::string& id) const {
    auto it = vertex_by_id_.find(id);
    if (it == vertex_by_id_.end()) throw ParseError("unknown vertex id: " + id);
    return it->second;
}

int Scenario::edge_index(const std::string& id) const {
    auto it = edge_by_id_.find(id);
    if (it == edge_by_id_.end()) throw err_unknown_edge("no edge with id " + id);
    return it->second;
}

Walk::Walk(const Scenario& sc, std::vector<Step> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) throw err_not_composable("a walk has at least one step");
    for (auto& s : steps_)
        if (s.edge < 0 || s.edge >= sc.num_edges()) throw err_unknown_edge("walk step edge out of range");
    initial_ = step_from(sc, 0);
    terminal_ = step_to(sc, length() - 1);
    for (int k = 0; k + 1 < length(); ++k) {
        if (step_to(sc, k) != step_from(sc, k + 1))
            throw err_not_composable("consecutive walk steps do not share a vertex");
    }
}

bool Walk::edges_distinct() const {
    std::set<int> seen;
    for (auto& s : steps_)
        if (!seen.insert(s.edge).second) return false;
    return true;
}

int Walk::step_from(const Scenario& sc, int k) const {
    const auto& e = sc.edge(steps_[k].edge);
    return steps_[k].forward ? e.source : e.target;
}

int Walk::step_to(const Scenario& sc, int k) const {
    const auto& e = sc.edge(steps_[k].edge);
    return steps_[k].forward ? e.target : e.source;
}

bool Walk::operator<(const Walk& o) const {
    auto key = [](const Walk& w) {
        std::vector<std::pair<int, int>> k;
        for (auto& s : w.steps_) k.emplace_back(s.edge, s.forward ? 0 : 1);
        return k;
    };
    if (length() != o.length()) return length() < o.length();
    return key(*this) < key(o);
}

Walk Walk::canonical_circle(const Scenario& sc) const {
    if (!is_circle()) throw err_not_composable("canonical form is defined for circles");
    auto rotate_to_least = [&](std::vector<Step> st) {
        int best = 0;
        for (int k = 1; k < static_cast<int>(st.size()); ++k)
            if (sc.edge(st[k].edge).id < sc.edge(st[best].edge).id) best = k;
        std::rotate(st.begin(), st.begin() + best, st.end());
        return st;
    };
    std::vector<Step> fwd = rotate_to_least(steps_);
    if (!fwd.front().forward) {
        std::vector<Step> rev(steps_.rbegin(), steps_.rend());
        for (auto& s : rev) s.forward = !s.forward;
        fwd = rotate_to_least(std::move(rev));
    }
    return Walk(sc, fwd);
}

Components connected_components(const Scenario& sc) {
    Components r{std::vector<int>(sc.num_vertices(), -1), 0};
    for (int v0 = 0; v0 < sc.num_vertices(); ++v0) {
        if (r.component[v0] >= 0) continue;
        const int c = r.count++;
        std::deque<int> queue{v0};
        r.component[v0] = c;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (auto [e, slot] : sc.incident(v)) {
                int u = slot == 0 ? sc.edge(e).target : sc.edge(e).source;
                if (r.component[u] < 0) {
                    r.component[u] = c;
                    queue.push_back(u);
                }
            }
        }
    }
    return r;
}

bool is_connected(const Scenario& sc) {
    return sc.num_vertices() <= 1 || connected_components(sc).count == 1;
}

namespace {

// BFS spanning forest rooted at the least vertex of each component. Returns
// per-vertex (parent edge, forward flag) with -1 at roots; forest edges are
// marked in in_forest.
struct Forest {
    std::vector<int> parent_edge;
    std::vector<bool> parent_forward;  // true: the edge points parent -> child
    std::vector<int> depth;
    std::vector<bool> in_forest;
};

Forest spanning_forest(const Scenario& sc) {
    Forest f{std::vector<int>(sc.num_vertices(), -1),
             std::vector<bool>(sc.num_vertices(), false),
             std::vector<int>(sc.num_vertices(), -1),
             std::vector<bool>(sc.num_edges(), false)};
    for (int v0 = 0; v0 < sc.num_vertices(); ++v0) {
        if (f.depth[v0] >= 0) continue;
        f.depth[v0] = 0;
        std::deque<int> queue{v0};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (auto [e, slot] : sc.incident(v)) {
                if (sc.is_loop(e)) continue;
                int u = slot == 0 ? sc.edge(e).target : sc.edge(e).source;
                if (f.depth[u] >= 0) continue;
                f.depth[u] = f.depth[v] + 1;
                f.parent_edge[u] = e;
                f.parent_forward[u] = slot == 0;  // v -> u along edge direction
                f.in_forest[e] = true;
                queue.push_back(u);
            }
        }
    }
    return f;
}

// Forest path from u up-and-down to v as steps; empty when u == v.
std::vector<Step> forest_path(const Scenario& sc, const Forest& f, int u, int v) {
    std::vector<Step> up, down;
    int a = u, b = v;
    while (f.depth[a] > f.depth[b]) {
        up.push_back({f.parent_edge[a], !f.parent_forward[a]});  // child -> parent
        a = f.parent_forward[a] ? sc.edge(f.parent_edge[a]).source : sc.edge(f.parent_edge[a]).target;
    }
    while (f.depth[b] > f.depth[a]) {
        down.push_back({f.parent_edge[b], f.parent_forward[b]});  // parent -> child
        b = f.parent_forward[b] ? sc.edge(f.parent_edge[b]).source : sc.edge(f.parent_edge[b]).target;
    }
    while (a != b) {
        up.push_back({f.parent_edge[a], !f.parent_forward[a]});
        a = f.parent_forward[a] ? sc.edge(f.parent_edge[a]).source : sc.edge(f.parent_edge[a]).target;
        down.push_back({f.parent_edge[b], f.parent_forward[b]});
        b = f.parent_forward[b] ? sc.edge(f.parent_edge[b]).source : sc.edge(f.parent_edge[b]).target;
    }
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

}  // namespace

std::vector<Circle> cycle_basis(const Scenario& sc) {
    const Forest f = spanning_forest(sc);
    std::vector<Circle> basis;
    for (int e = 0; e < sc.num_edges(); ++e) {
        if (f.in_forest[e]) continue;
        std::vector<Step> steps{{e, true}};
        auto back = forest_path(sc, f, sc.edge(e).target, sc.edge(e).source);
        steps.insert(steps.end(), back.begin(), back.end());
        basis.push_back(Walk(sc, steps).canonical_circle(sc));
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

std::vector<Circle> enumerate_circles(const Scenario& sc, int max_len) {
    std::vector<Circle> out;
    std::vector<bool> used(sc.num_edges(), false);
    std::vector<Step> path;

    // Grow walks from a fixed start edge taken forward; only edges with a
    // larger id may continue the walk, so each circle is found from its least
    // edge. Reflections are both found; keep the lexicographically smaller.
    auto extend = [&](auto&& self, int start_edge, int start_vertex, int at) -> void {
        if (static_cast<int>(path.size()) > max_len) return;
        if (at == start_vertex && path.size() >= 1) {
            Walk w(sc, path);
            Walk canon = w.canonical_circle(sc);
            if (canon == w) out.push_back(canon);
            // longer circles through the start vertex are still possible; keep going
        }
        if (static_cast<int>(path.size()) == max_len) return;
        for (auto [e, slot] : sc.incident(at)) {
            if (used[e] || sc.edge(e).id <= sc.edge(start_edge).id) continue;
            if (sc.edge(e).id == sc.edge(start_edge).id) continue;
            bool forward = slot == 0;
            int next = forward ? sc.edge(e).target : sc.edge(e).source;
            used[e] = true;
            path.push_back({e, forward});
            self(self, start_edge, start_vertex, next);
            path.pop_back();
            used[e] = false;
        }
    };

    for (int e0 = 0; e0 < sc.num_edges(); ++e0) {
        used[e0] = true;
        path.push_back({e0, true});
        extend(extend, e0, sc.edge(e0).source, sc.edge(e0).target);
        path.pop_back();
        used[e0] = false;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CollapseMap collapse_edge(const Scenario& sc, const std::string& edge_id) {
    const int e = sc.edge_index(edge_id);
    if (sc.is_loop(e)) throw err_loop_collapse("cannot collapse loop " + edge_id);
    const int keep = sc.edge(e).source;
    const int drop = sc.edge(e).target;

    std::vector<int> vmap(sc.num_vertices());
    std::vector<std::string> vids;
    for (int v = 0; v < sc.num_vertices(); ++v) {
        if (v == drop) continue;
        vmap[v] = static_cast<int>(vids.size());
        vids.push_back(sc.vertex_id(v));
    }
    vmap[drop] = vmap[keep];

    std::vector<int> emap(sc.num_edges(), -1);
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    for (int i = 0; i < sc.num_edges(); ++i) {
        if (i == e) continue;
        emap[i] = static_cast<int>(edges.size());
        edges.emplace_back(sc.edge(i).id, vids[vmap[sc.edge(i).source]], vids[vmap[sc.edge(i).target]]);
    }
    return CollapseMap{Scenario(sc.d(), std::move(vids), std::move(edges)),
                       edge_id, keep, drop, std::move(vmap), std::move(emap)};
}

}  // namespace ctxlab
