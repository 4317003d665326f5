#include "ctxlab/contextuality.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ctxlab/homotopy.hpp"
#include "ctxlab/logiccat.hpp"
#include "ctxlab/lp.hpp"

namespace ctxlab {

namespace {

// Backtracking plan: vertex order, per-vertex value order, and the edges that
// become fully assigned at each position.
struct SearchPlan {
    std::vector<int> order;
    std::vector<std::vector<int>> values;
    std::vector<std::vector<int>> check_edges;
    std::vector<bool> check_marginal;  // isolated vertices check the stored marginal
};

SearchPlan make_plan(const SimpDist& p, bool heuristic) {
    const auto& sc = p.scenario();
    const int n = sc.num_vertices();
    const int d = sc.d();
    SearchPlan pl;
    pl.order.resize(n);
    std::iota(pl.order.begin(), pl.order.end(), 0);
    if (heuristic) {
        std::stable_sort(pl.order.begin(), pl.order.end(), [&](int u, int v) {
            return sc.incident(u).size() > sc.incident(v).size();
        });
    }
    std::vector<int> pos(n);
    for (int k = 0; k < n; ++k) pos[pl.order[k]] = k;

    pl.check_edges.resize(n);
    for (int e = 0; e < sc.num_edges(); ++e)
        pl.check_edges[std::max(pos[sc.edge(e).source], pos[sc.edge(e).target])].push_back(e);
    pl.check_marginal.resize(n);
    for (int k = 0; k < n; ++k) pl.check_marginal[k] = sc.incident(pl.order[k]).empty();

    pl.values.resize(n);
    for (int k = 0; k < n; ++k) {
        const int v = pl.order[k];
        std::vector<int> vals(d);
        std::iota(vals.begin(), vals.end(), 0);
        if (heuristic) {
            std::vector<long> cnt(d, 0);
            for (auto [e, slot] : sc.incident(v))
                for (auto& [x, s] : p.matrix(e).weights()) ++cnt[x[slot]];
            if (sc.incident(v).empty()) {
                const Dist m = p.vertex_marginal(v);
                for (auto& [x, s] : m.weights()) ++cnt[x[0]];
            }
            std::stable_sort(vals.begin(), vals.end(), [&](int a, int b) { return cnt[a] > cnt[b]; });
        }
        pl.values[k] = vals;
    }
    return pl;
}

// Depth-first over the plan; emit returns true to stop the search.
template <typename F>
bool search_support(const SimpDist& p, const SearchPlan& pl, int k, std::vector<int>& phi, F&& emit) {
    const auto& sc = p.scenario();
    if (k == sc.num_vertices()) return emit(phi);
    const int v = pl.order[k];
    for (int a : pl.values[k]) {
        phi[v] = a;
        bool ok = !pl.check_marginal[k] || !p.vertex_marginal(v).at(Outcome{a}).is_zero();
        for (size_t i = 0; ok && i < pl.check_edges[k].size(); ++i) {
            const auto& e = sc.edge(pl.check_edges[k][i]);
            ok = !p.matrix(pl.check_edges[k][i]).at(Outcome{phi[e.source], phi[e.target]}).is_zero();
        }
        if (ok && search_support(p, pl, k + 1, phi, emit)) return true;
    }
    phi[v] = -1;
    return false;
}

Dist half_box(int kind_d, bool anti) {
    Dist::Weights w;
    for (int a = 0; a < 2; ++a)
        w.emplace_back(Outcome{a, anti ? 1 - a : a}, Scalar::rational(1, 2));
    return Dist::from_weights(Kind::rational, kind_d, std::move(w));
}

}  // namespace

SupportResult support(const SimpDist& p) {
    SearchPlan pl = make_plan(p, true);
    std::vector<int> phi(p.scenario().num_vertices(), -1);
    SupportResult r;
    search_support(p, pl, 0, phi, [&](const std::vector<int>& full) {
        r.labelings.push_back(full);
        return false;
    });
    std::sort(r.labelings.begin(), r.labelings.end());
    return r;
}

std::optional<OutcomeLabeling> first_support_labeling(const SimpDist& p) {
    SearchPlan pl = make_plan(p, false);
    std::vector<int> phi(p.scenario().num_vertices(), -1);
    std::optional<OutcomeLabeling> found;
    search_support(p, pl, 0, phi, [&](const std::vector<int>& full) {
        found = full;
        return true;
    });
    return found;
}

PRCircleResult pr_circle_decider(const SimpDist& p) {
    if (p.kind() != Kind::rational) throw err_semiring("the circle decider needs rational weights");
    if (p.d() != 2) throw err_arity("the circle decider is stated for d = 2");
    const auto& sc = p.scenario();
    const Dist plus = half_box(sc.d(), false), minus = half_box(sc.d(), true);

    std::vector<std::tuple<std::string, std::string, std::string>> triples;
    std::vector<int> label;
    for (int e = 0; e < sc.num_edges(); ++e) {
        const bool is_plus = p.matrix(e) == plus, is_minus = p.matrix(e) == minus;
        if (!is_plus && !is_minus) continue;
        triples.emplace_back(sc.edge(e).id, sc.vertex_id(sc.edge(e).source),
                             sc.vertex_id(sc.edge(e).target));
        label.push_back(is_minus ? 1 : 0);
    }
    const Scenario sub(sc.d(), sc.vertex_ids(), triples);
    for (const Circle& c : cycle_basis(sub)) {
        if (circle_invariant(sub, c, label) == 0) continue;
        std::vector<Step> steps;
        for (const Step& s : c.steps())
            steps.push_back({sc.edge_index(sub.edge(s.edge).id), s.forward});
        return {true, Walk(sc, steps)};
    }
    return {false, std::nullopt};
}

SimpDist deterministic_mixture(std::shared_ptr<const Scenario> sc, const NCWitness& w) {
    const int n = sc->num_vertices(), d = sc->d();
    std::vector<Dist> mats(sc->num_edges(), Dist(Kind::rational, d));
    std::map<int, Dist> iso;
    for (int v = 0; v < n; ++v)
        if (sc->incident(v).empty()) iso.emplace(v, Dist(Kind::rational, d));
    for (const auto& [phi, s] : w.weights) {
        if (static_cast<int>(phi.size()) != n) throw err_arity("labeling length differs from vertex count");
        for (int x : phi)
            if (x < 0 || x >= d) throw err_arity("labeling value not in Z_" + std::to_string(d));
        for (int e = 0; e < sc->num_edges(); ++e)
            mats[e].accumulate(Outcome{phi[sc->edge(e).source], phi[sc->edge(e).target]}, s);
        for (auto& [v, m] : iso) m.accumulate(Outcome{phi[v]}, s);
    }
    return {std::move(sc), Kind::rational, std::move(mats), std::move(iso)};
}

LPDecision is_contextual(const SimpDist& p, long cap) {
    if (p.kind() != Kind::rational) throw err_semiring("the mixture test needs rational weights");
    const auto& sc = p.scenario();
    BigInt total = 1;
    for (int v = 0; v < sc.num_vertices(); ++v) total *= sc.d();
    if (total > cap)
        throw CapExceeded(total.str() + " labelings exceed the cap of " + std::to_string(cap));

    const std::vector<OutcomeLabeling> S = support(p).labelings;
    if (S.empty()) return {true, std::nullopt};
    const int nv = static_cast<int>(S.size());

    // One equality per nonzero coordinate plus normalization; support
    // labelings never hit a zero coordinate, so those rows are vacuous.
    std::vector<std::vector<BigRat>> A;
    std::vector<BigRat> b;
    auto add_row = [&](const std::function<bool(const OutcomeLabeling&)>& hit, const Scalar& rhs) {
        std::vector<BigRat> row(nv, 0);
        for (int k = 0; k < nv; ++k)
            if (hit(S[k])) row[k] = 1;
        A.push_back(std::move(row));
        b.push_back(rhs.value());
    };
    for (int e = 0; e < sc.num_edges(); ++e) {
        const auto& edge = sc.edge(e);
        for (auto& [x, s] : p.matrix(e).weights())
            add_row([&](const OutcomeLabeling& phi) {
                return phi[edge.source] == x[0] && phi[edge.target] == x[1];
            }, s);
    }
    for (auto& [v, m] : p.isolated_marginals())
        for (auto& [x, s] : m.weights())
            add_row([&, v = v](const OutcomeLabeling& phi) { return phi[v] == x[0]; }, s);
    add_row([](const OutcomeLabeling&) { return true; }, Scalar::one(Kind::rational));

    const LPResult r = lp_feasible(std::move(A), std::move(b));
    if (!r.feasible) return {true, std::nullopt};
    NCWitness w;
    for (int k = 0; k < nv; ++k)
        if (r.x[k] != 0) w.weights.emplace_back(S[k], Scalar::rational(r.x[k]));
    return {false, std::move(w)};
}

bool is_polytope_vertex(const SimpDist& p) {
    if (p.kind() != Kind::rational) throw err_semiring("the polytope is defined over rational weights");
    const auto& sc = p.scenario();
    const int d = sc.d();

    std::map<std::tuple<int, int, int>, int> ecol;  // (edge, a, b) -> column
    std::map<std::pair<int, int>, int> vcol;        // (isolated vertex, a) -> column
    int ncols = 0;
    for (int e = 0; e < sc.num_edges(); ++e)
        for (auto& [x, s] : p.matrix(e).weights()) ecol[{e, x[0], x[1]}] = ncols++;
    for (auto& [v, m] : p.isolated_marginals())
        for (auto& [x, s] : m.weights()) vcol[{v, x[0]}] = ncols++;
    if (ncols == 0) return true;

    std::vector<std::vector<BigRat>> rows;
    auto slot_coeff = [&](std::vector<BigRat>& row, int e, int slot, int a, int sign) {
        for (int c = 0; c < d; ++c) {
            auto it = ecol.find(slot == 0 ? std::tuple{e, a, c} : std::tuple{e, c, a});
            if (it != ecol.end()) row[it->second] += sign;
        }
    };
    for (int e = 0; e < sc.num_edges(); ++e) {
        std::vector<BigRat> row(ncols, 0);
        for (auto& [key, col] : ecol)
            if (std::get<0>(key) == e) row[col] = 1;
        rows.push_back(std::move(row));
    }
    for (int v = 0; v < sc.num_vertices(); ++v) {
        const auto& inc = sc.incident(v);
        for (size_t k = 0; k + 1 < inc.size(); ++k)
            for (int a = 0; a < d; ++a) {
                std::vector<BigRat> row(ncols, 0);
                slot_coeff(row, inc[k].first, inc[k].second, a, +1);
                slot_coeff(row, inc[k + 1].first, inc[k + 1].second, a, -1);
                rows.push_back(std::move(row));
            }
    }
    for (auto& [v, m] : p.isolated_marginals()) {
        std::vector<BigRat> row(ncols, 0);
        for (auto& [x, s] : m.weights()) row[vcol[{v, x[0]}]] = 1;
        rows.push_back(std::move(row));
    }
    return matrix_rank(std::move(rows)) == ncols;
}

SCResult is_strongly_contextual(const SimpDist& p) {
    SCResult r;
    r.example = first_support_labeling(p);
    r.strongly_contextual = !r.example.has_value();
    if (p.d() == 2 && p.kind() == Kind::rational) {
        const PRCircleResult pr = pr_circle_decider(p);
        if (pr.strongly_contextual != r.strongly_contextual)
            throw std::logic_error("decider disagreement: support search vs circle criterion");
        r.witness_circle = pr.witness;
        r.explanation = r.strongly_contextual
                            ? "support is empty; a circle carries an odd box (circle criterion agrees)"
                            : "a support labeling exists; every box circle is even (circle criterion agrees)";
    } else if (p.d() == 2 && p.kind() == Kind::boolean) {
        const bool crit = sc_criterion(build_category(p));
        if (crit != r.strongly_contextual)
            throw std::logic_error("decider disagreement: support search vs endomorphism criterion");
        r.explanation = r.strongly_contextual
                            ? "support is empty (endomorphism criterion agrees)"
                            : "a support labeling exists (endomorphism criterion agrees)";
    } else {
        r.explanation = r.strongly_contextual ? "support is empty" : "a support labeling exists";
    }
    return r;
}

ClassifyReport classify(const SimpDist& p, long cap) {
    ClassifyReport r;
    r.deterministic = p.is_deterministic();
    const SCResult sc = is_strongly_contextual(p);
    r.strongly_contextual = sc.strongly_contextual;
    r.support_example = sc.example;
    r.sc_circle = sc.witness_circle;
    if (p.kind() == Kind::rational) {
        r.vertex = is_polytope_vertex(p);
        LPDecision lp = is_contextual(p, cap);
        r.contextual = lp.contextual;
        r.nc_witness = std::move(lp.witness);
    } else if (r.strongly_contextual) {
        r.contextual = true;  // empty support rules out any mixture
    }
    return r;
}

}  // namespace ctxlab
