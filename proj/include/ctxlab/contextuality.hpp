#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctxlab/simpdist.hpp"

namespace ctxlab {

inline constexpr long default_labeling_cap = 4096;

// All vertex labelings compatible with every nonzero pattern: phi is in the
// support iff M_e(phi(src), phi(tgt)) != 0 for every edge and the stored
// marginal is nonzero at phi(v) for every isolated vertex.
struct SupportResult {
    std::vector<OutcomeLabeling> labelings;  // lexicographically sorted
    bool empty() const { return labelings.empty(); }
};
SupportResult support(const SimpDist& p);

// The lexicographically least support labeling, if any. Early-exit search.
std::optional<OutcomeLabeling> first_support_labeling(const SimpDist& p);

// Strong contextuality = empty support. Independent routes cross-check the
// verdict where they apply: the circle decider for rational d = 2, the
// endomorphism criterion for Boolean d = 2. Disagreement is an internal
// error, never a verdict.
struct SCResult {
    bool strongly_contextual;
    std::string explanation;
    std::optional<OutcomeLabeling> example;  // least support labeling when not SC
    std::optional<Circle> witness_circle;    // circle witness, rational d = 2 SC only
};
SCResult is_strongly_contextual(const SimpDist& p);

// Rational d = 2 decision by the circle criterion: strongly contextual iff
// some circle restricts to a box with matrices in {diag(1/2), antidiag(1/2)}
// and an odd number of antidiagonals. Equivalently the subgraph of such
// edges, labeled 0/1, carries a circle of odd label sum; fundamental circles
// of a spanning forest suffice. The witness is the least such circle in
// canonical form.
struct PRCircleResult {
    bool strongly_contextual;
    std::optional<Circle> witness;
};
PRCircleResult pr_circle_decider(const SimpDist& p);

// A rational mixture of deterministic distributions, as weights over vertex
// labelings. Sorted by labeling, nonzero weights, total one.
struct NCWitness {
    std::vector<std::pair<OutcomeLabeling, Scalar>> weights;
};

// The distribution the witness mixes to: edge e gets the image measure of the
// weights under phi -> (phi(src), phi(tgt)).
SimpDist deterministic_mixture(std::shared_ptr<const Scenario> sc, const NCWitness& w);

// Contextuality = no deterministic mixture reproduces p. Decided by exact LP
// feasibility; variables range over support labelings only, which is lossless
// because zero coordinates force zero weight in any mixture. Throws TooLarge
// when d^n exceeds the cap.
struct LPDecision {
    bool contextual;
    std::optional<NCWitness> witness;  // present iff non-contextual
};
LPDecision is_contextual(const SimpDist& p, long cap = default_labeling_cap);

// Is p a vertex of the distribution polytope: after pinning the zero
// coordinates, the affine system of per-edge normalizations and per-vertex
// marginal agreements determines p uniquely (exact rank test).
bool is_polytope_vertex(const SimpDist& p);

// Aggregate report. Rational inputs get all four flags; Boolean inputs get
// deterministic/SC, with contextual set only when implied (SC forces it) and
// the polytope flag left empty.
struct ClassifyReport {
    bool deterministic;
    std::optional<bool> vertex;
    std::optional<bool> contextual;
    bool strongly_contextual;
    std::optional<OutcomeLabeling> support_example;
    std::optional<Circle> sc_circle;
    std::optional<NCWitness> nc_witness;
};
ClassifyReport classify(const SimpDist& p, long cap = default_labeling_cap);

}  // namespace ctxlab
