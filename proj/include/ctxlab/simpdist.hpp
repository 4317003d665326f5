#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctxlab/dist.hpp"
#include "ctxlab/scenario.hpp"

namespace ctxlab {

// A vertex labeling by outcomes in Z_d, indexed like Scenario vertices. As a
// simplicial map it sends the edge (u,v) to the pair (phi(u), phi(v)).
using OutcomeLabeling = std::vector<int>;

// A simplicial distribution on a 1-dimensional scenario, in edge-matrix
// coordinates: edge e carries a Dist M_e over pairs with M_e(a,b) = weight of
// (outcome a at the source, outcome b at the target). Vertex distributions are
// the marginals (row sums at the source, column sums at the target) and are
// stored only for isolated vertices, where no edge determines them.
class SimpDist {
  public:
    SimpDist(std::shared_ptr<const Scenario> sc, Kind kind, std::vector<Dist> edge_dists,
             std::map<int, Dist> isolated = {});

    const Scenario& scenario() const { return *sc_; }
    std::shared_ptr<const Scenario> scenario_ptr() const { return sc_; }
    Kind kind() const { return kind_; }
    int d() const { return sc_->d(); }

    const Dist& matrix(int e) const { return edge_[e]; }
    const Dist& matrix(const std::string& edge_id) const { return edge_[sc_->edge_index(edge_id)]; }
    Scalar entry(int e, int a, int b) const { return edge_[e].at(Outcome{a, b}); }

    // The common marginal at v. Isolated vertices read the stored
    // distribution; covered vertices marginalize the first incident slot.
    Dist vertex_marginal(int v) const;
    const std::map<int, Dist>& isolated_marginals() const { return isolated_; }

    bool is_deterministic() const;

    // The matrix seen along a step: M_e as stored for a forward step, its
    // transpose for a reversed one.
    Dist step_matrix(const Step& s) const;

    bool operator==(const SimpDist& o) const;

  private:
    std::shared_ptr<const Scenario> sc_;
    Kind kind_;
    std::vector<Dist> edge_;
    std::map<int, Dist> isolated_;
};

// delta-distribution of a labeling: every edge gets the delta at
// (phi(source), phi(target)), isolated vertices the delta at phi(v).
SimpDist deterministic(std::shared_ptr<const Scenario> sc, const OutcomeLabeling& phi, Kind kind);

// The box supported on a circle: every circle edge gets diag(1/2,1/2), the
// edges in `minus` antidiag(1/2,1/2); the minus count must be odd and the
// circle must cover every edge of the scenario. Rational, d = 2 only.
SimpDist pr_box(std::shared_ptr<const Scenario> sc, const Circle& c,
                const std::set<std::string>& minus);

// Does p restricted to the circle's edges look like a PR box: all matrices in
// {diag(1/2,1/2), antidiag(1/2,1/2)} with an odd number of antidiagonals?
bool is_pr_box_on(const SimpDist& p, const Circle& c);

// The edge-level gluing section: edge e gets M_e(a,b) = q_e(b-a)/d from a
// one-outcome distribution q_e per edge. Always consistent; every vertex
// marginal is uniform.
SimpDist section_T(std::shared_ptr<const Scenario> sc,
                   const std::map<std::string, Dist>& q_edges);

// Group action by a labeling: M'_e(i,j) = M_e(i-phi(src), j-phi(tgt)). Acts
// simplicially, so classification of the result matches the input.
SimpDist act(const OutcomeLabeling& phi, const SimpDist& p);

// Composition across a two-step walk: out(a,b) = sum_c M1(a,c) M2(c,b) / p_y(c)
// at the shared vertex y, where zero-marginal columns contribute zero. No
// renormalization happens; the outer marginals are preserved as-is.
Dist compose(const SimpDist& p, const Step& s1, const Step& s2);

// Left fold of compose along a walk.
Dist compose_walk(const SimpDist& p, const Walk& w);

// Restriction to a subscenario: keep the named vertices and edges; both
// endpoint vertices of every kept edge must be kept. Vertices that lose all
// their edges keep their marginal as stored data.
SimpDist restrict(const SimpDist& p, const std::set<std::string>& vertices,
                  const std::set<std::string>& edges);

// Restriction to the vertices and edges visited by a circle.
SimpDist restrict_to_circle(const SimpDist& p, const Circle& c);

// Transport across an edge collapse. Requires the collapsed edge's matrix to
// be supported on the diagonal; remaining edges keep their matrices. Inverse
// of pullback_collapse.
SimpDist transport_collapse(const CollapseMap& cm, const SimpDist& p);

// Pullback along the collapse: matrices are copied back and the collapsed
// edge gets diag(marginal at the kept vertex).
SimpDist pullback_collapse(const CollapseMap& cm, std::shared_ptr<const Scenario> source,
                           const SimpDist& collapsed);

SimpDist boolean_projection(const SimpDist& p);

}  // namespace ctxlab
