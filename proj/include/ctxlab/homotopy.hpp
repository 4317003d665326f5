#pragma once

#include <optional>
#include <vector>

#include "ctxlab/simpdist.hpp"

namespace ctxlab {

// A labeling of the scenario's edges by elements of Z_d, i.e. a simplicial map
// into the nerve of Z_d. Indexed like Scenario edges.
using NerveLabeling = std::vector<int>;

// The product of edge labels along a circle, with reversed steps inverted:
// sum of +label for forward steps, -label for reversed ones, mod d.
int circle_invariant(const Scenario& sc, const Circle& c, const NerveLabeling& phi);

// A labeling extends over the cone iff its invariant vanishes on every circle;
// for a basis of circles this is already enough. The witness is the cone's
// vertex potential psi with psi(target) = psi(source) + label on every edge,
// normalized to zero at the least vertex of each component.
struct NullHomotopy {
    bool null_homotopic;
    std::optional<std::vector<int>> potential;  // per vertex, present iff null_homotopic
};
NullHomotopy is_null_homotopic(const Scenario& sc, const NerveLabeling& phi);

// Exact counts for a connected scenario with n vertices and m edges:
// d^(n-1) labelings are null-homotopic, d^m - d^(n-1) are not.
BigInt count_null_homotopic(const Scenario& sc);
BigInt count_non_null_homotopic(const Scenario& sc);

// The fiber over the delta-labeling phi inside the distribution polytope. It
// is governed by the subgroup H generated by the invariants of all circles
// (a cycle basis suffices; Z_d is abelian): members correspond to
// H-translation-invariant vertex distributions, the face is a simplex on the
// H-orbits of Z_d, and its dimension is |Z_d / H| - 1.
struct FaceStructure {
    int subgroup_generator;               // H = <g>, the gcd of all invariants and d
    int subgroup_order;                   // |H| = d / gcd
    std::vector<std::vector<int>> orbits;  // H-orbits of Z_d, each sorted, ordered by least element
    int dimension;                        // number of orbits - 1
};
FaceStructure face_structure(const Scenario& sc, const NerveLabeling& phi);

// The member of Face(phi) determined by an H-invariant distribution at the
// base vertex (the first vertex in declaration order): propagate along a spanning tree by
// p_target = p_source * delta(label), and give edge e the matrix
// M_e(a, a + phi(e)) = p_source(a). Requires a connected scenario and an
// H_phi-invariant base distribution.
SimpDist face_member(const Scenario& sc, const NerveLabeling& phi, const Dist& base_dist);

// For prime d and a non-null-homotopic labeling the face is a single point:
// the strongly contextual vertex with uniform vertex marginals.
SimpDist unique_sc_vertex(const Scenario& sc, const NerveLabeling& phi);

// The labeling realized by a deterministic distribution's edge deltas, as a
// nerve labeling: edge (u,v) carries phi(v) - phi(u).
NerveLabeling nerve_labeling_of(const SimpDist& deterministic_p);

}  // namespace ctxlab
