#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctxlab/errors.hpp"

namespace ctxlab {

// A 1-dimensional measurement space: a directed multigraph with loops. Each
// edge is a nondegenerate 1-simplex with source = d1 and target = d0; outcomes
// for every simplex range over Z_d. The cone over the space is never
// materialized; everything downstream works on this graph directly.
class Scenario {
  public:
    struct Edge {
        std::string id;
        int source;  // vertex index
        int target;
    };

    Scenario(int d, std::vector<std::string> vertex_ids,
             std::vector<std::tuple<std::string, std::string, std::string>> edges);

    int d() const { return d_; }
    int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& vertex_id(int v) const { return vertex_ids_[v]; }

    int vertex_index(const std::string& id) const;
    int edge_index(const std::string& id) const;  // throws UnknownEdge

    bool is_loop(int e) const { return edges_[e].source == edges_[e].target; }

    // Edges touching v, as (edge index, slot): slot 0 = v is the source,
    // slot 1 = v is the target. Loops contribute both slots.
    const std::vector<std::pair<int, int>>& incident(int v) const { return incident_[v]; }

    bool operator==(const Scenario& o) const {
        return d_ == o.d_ && vertex_ids_ == o.vertex_ids_ && edge_triples() == o.edge_triples();
    }

  private:
    std::vector<std::tuple<std::string, std::string, std::string>> edge_triples() const;

    int d_;
    std::vector<std::string> vertex_ids_;
    std::vector<Edge> edges_;
    std::map<std::string, int> vertex_by_id_;
    std::map<std::string, int> edge_by_id_;
    std::vector<std::vector<std::pair<int, int>>> incident_;
};

// One traversal step: an edge together with a direction of travel. Forward
// enters at the source and exits at the target.
struct Step {
    int edge;
    bool forward;
    bool operator==(const Step& o) const { return edge == o.edge && forward == o.forward; }
};

// A walk glues steps head-to-tail. A walk whose edges are pairwise distinct
// and whose endpoints coincide is a circle.
class Walk {
  public:
    Walk() = default;
    Walk(const Scenario& sc, std::vector<Step> steps);

    const std::vector<Step>& steps() const { return steps_; }
    int length() const { return static_cast<int>(steps_.size()); }
    int initial_vertex() const { return initial_; }
    int terminal_vertex() const { return terminal_; }
    bool is_closed() const { return length() > 0 && initial_ == terminal_; }
    bool edges_distinct() const;
    bool is_circle() const { return is_closed() && edges_distinct(); }

    int step_from(const Scenario& sc, int k) const;  // vertex entered at step k
    int step_to(const Scenario& sc, int k) const;

    // Canonical representative up to rotation and reflection: the step on the
    // least edge id comes first and is traversed forward. Circles only.
    Walk canonical_circle(const Scenario& sc) const;

    bool operator==(const Walk& o) const { return steps_ == o.steps_; }
    bool operator<(const Walk& o) const;

  private:
    std::vector<Step> steps_;
    int initial_ = -1;
    int terminal_ = -1;
};

using Circle = Walk;

// Component index per vertex plus the component count. Indices follow the
// least-vertex order of discovery, so they are deterministic.
struct Components {
    std::vector<int> component;
    int count;
};
Components connected_components(const Scenario& sc);

bool is_connected(const Scenario& sc);

// Fundamental circles of a spanning forest (BFS from the least vertex of each
// component): one circle per non-forest edge, each in canonical form. Size is
// always m - n + c.
std::vector<Circle> cycle_basis(const Scenario& sc);

// Every circle with pairwise-distinct edges of length <= max_len, each exactly
// once up to rotation and reflection, in canonical form, sorted.
std::vector<Circle> enumerate_circles(const Scenario& sc, int max_len);

// Result of collapsing a non-loop edge: the target vertex is merged into the
// source, the edge disappears, every other edge keeps its id. Loops produced
// by parallel edges are kept.
struct CollapseMap {
    Scenario collapsed;
    std::string collapsed_edge;       // id of the removed edge
    int kept_vertex;                  // index in the source scenario
    int dropped_vertex;               // index in the source scenario
    std::vector<int> vertex_map;      // source vertex index -> collapsed vertex index
    std::vector<int> edge_map;        // source edge index -> collapsed edge index (-1 for the removed edge)
};
CollapseMap collapse_edge(const Scenario& sc, const std::string& edge_id);

}  // namespace ctxlab
