#include "ctxlab/simpdist.hpp"

#include <algorithm>

namespace ctxlab {

namespace {

Dist row_marginal(const Dist& m) {
    return m.pushforward([](const Outcome& x) { return x.slice(0, 1); });
}

Dist col_marginal(const Dist& m) {
    return m.pushforward([](const Outcome& x) { return x.slice(1, 2); });
}

Dist transpose(const Dist& m) {
    return m.pushforward([](const Outcome& x) { return Outcome{x[1], x[0]}; });
}

}  // namespace

SimpDist::SimpDist(std::shared_ptr<const Scenario> sc, Kind kind, std::vector<Dist> edge_dists,
                   std::map<int, Dist> isolated)
    : sc_(std::move(sc)), kind_(kind), edge_(std::move(edge_dists)), isolated_(std::move(isolated)) {
    if (static_cast<int>(edge_.size()) != sc_->num_edges())
        throw err_margin("expected one matrix per edge");
    for (int e = 0; e < sc_->num_edges(); ++e) {
        const Dist& m = edge_[e];
        if (m.kind() != kind_) throw err_semiring("edge matrix kind mismatch on " + sc_->edge(e).id);
        if (m.d() != sc_->d() || m.arity() != 2)
            throw err_arity("edge matrix must be a distribution on pairs over Z_d");
        m.validate();
    }
    // Vertex-marginal consistency: all incident slots agree; loops force
    // row marginal == column marginal of the same matrix.
    for (int v = 0; v < sc_->num_vertices(); ++v) {
        const auto& inc = sc_->incident(v);
        if (inc.empty()) {
            auto it = isolated_.find(v);
            if (it == isolated_.end())
                throw err_margin("isolated vertex " + sc_->vertex_id(v) + " needs a stored marginal");
            if (it->second.kind() != kind_ || it->second.d() != sc_->d() || it->second.arity() != 1)
                throw err_arity("stored marginal at " + sc_->vertex_id(v) + " must be a one-outcome distribution");
            it->second.validate();
            continue;
        }
        if (isolated_.count(v))
            throw err_margin("vertex " + sc_->vertex_id(v) + " has edges; its marginal is derived");
        const Dist ref = inc[0].second == 0 ? row_marginal(edge_[inc[0].first])
                                            : col_marginal(edge_[inc[0].first]);
        for (auto [e, slot] : inc) {
            const Dist got = slot == 0 ? row_marginal(edge_[e]) : col_marginal(edge_[e]);
            if (got != ref)
                throw err_margin("incident marginals disagree at vertex " + sc_->vertex_id(v));
        }
    }
}

Dist SimpDist::vertex_marginal(int v) const {
    const auto& inc = sc_->incident(v);
    if (inc.empty()) return isolated_.at(v);
    return inc[0].second == 0 ? row_marginal(edge_[inc[0].first]) : col_marginal(edge_[inc[0].first]);
}

bool SimpDist::is_deterministic() const {
    for (const auto& m : edge_)
        if (!m.is_delta()) return false;
    for (const auto& [v, pv] : isolated_)
        if (!pv.is_delta()) return false;
    return true;
}

Dist SimpDist::step_matrix(const Step& s) const {
    return s.forward ? edge_[s.edge] : transpose(edge_[s.edge]);
}

bool SimpDist::operator==(const SimpDist& o) const {
    return *sc_ == *o.sc_ && kind_ == o.kind_ && edge_ == o.edge_ && isolated_ == o.isolated_;
}

SimpDist deterministic(std::shared_ptr<const Scenario> sc, const OutcomeLabeling& phi, Kind kind) {
    if (static_cast<int>(phi.size()) != sc->num_vertices())
        throw err_arity("labeling size must match vertex count");
    for (int x : phi)
        if (x < 0 || x >= sc->d()) throw err_arity("labeling value outside Z_d");
    std::vector<Dist> edges;
    for (const auto& e : sc->edges())
        edges.push_back(Dist::delta(kind, sc->d(), Outcome{phi[e.source], phi[e.target]}));
    std::map<int, Dist> isolated;
    for (int v = 0; v < sc->num_vertices(); ++v)
        if (sc->incident(v).empty()) isolated.emplace(v, Dist::delta(kind, sc->d(), Outcome{phi[v]}));
    return SimpDist(std::move(sc), kind, std::move(edges), std::move(isolated));
}

namespace {

Dist half_diag(int d, bool anti) {
    Dist m(Kind::rational, d);
    const Scalar half = Scalar::rational(1, 2);
    m.accumulate(anti ? Outcome{0, 1} : Outcome{0, 0}, half);
    m.accumulate(anti ? Outcome{1, 0} : Outcome{1, 1}, half);
    return m;
}

}  // namespace

SimpDist pr_box(std::shared_ptr<const Scenario> sc, const Circle& c,
                const std::set<std::string>& minus) {
    if (sc->d() != 2) throw err_arity("this box family lives at d = 2");
    if (!c.is_circle()) throw err_not_composable("box support must be a circle");
    if (minus.size() % 2 == 0) throw err_even_minus("the antidiagonal edge count must be odd");
    std::set<int> on_circle;
    for (const auto& s : c.steps()) on_circle.insert(s.edge);
    for (const auto& id : minus) {
        if (!on_circle.count(sc->edge_index(id)))
            throw err_unknown_edge("minus edge " + id + " is not on the circle");
    }
    if (static_cast<int>(on_circle.size()) != sc->num_edges())
        throw err_not_subcomplex("the circle must cover every edge of its scenario");
    std::vector<Dist> edges;
    for (const auto& e : sc->edges()) edges.push_back(half_diag(2, minus.count(e.id) > 0));
    return SimpDist(std::move(sc), Kind::rational, std::move(edges));
}

bool is_pr_box_on(const SimpDist& p, const Circle& c) {
    if (p.kind() != Kind::rational || p.d() != 2) return false;
    int anti = 0;
    for (const auto& s : c.steps()) {
        const Dist& m = p.matrix(s.edge);
        if (m == half_diag(2, false)) continue;
        if (m == half_diag(2, true)) {
            ++anti;
            continue;
        }
        return false;
    }
    return anti % 2 == 1;
}

SimpDist section_T(std::shared_ptr<const Scenario> sc,
                   const std::map<std::string, Dist>& q_edges) {
    const int d = sc->d();
    std::vector<Dist> edges;
    for (const auto& e : sc->edges()) {
        auto it = q_edges.find(e.id);
        if (it == q_edges.end()) throw err_unknown_edge("no section data for edge " + e.id);
        const Dist& q = it->second;
        if (q.d() != d || q.arity() != 1) throw err_arity("section data must be one-outcome distributions");
        q.validate();
        const Scalar inv_d = q.kind() == Kind::boolean
                                 ? Scalar::boolean(true)
                                 : Scalar::one(Kind::rational).div(Scalar::rational(d, 1));
        Dist m(q.kind(), d);
        for (int a = 0; a < d; ++a)
            for (auto& [g, s] : q.weights()) m.accumulate(Outcome{a, (a + g[0]) % d}, s * inv_d);
        edges.push_back(std::move(m));
    }
    std::map<int, Dist> isolated;
    for (int v = 0; v < sc->num_vertices(); ++v)
        if (sc->incident(v).empty())
            isolated.emplace(v, Dist::uniform(q_edges.empty() ? Kind::rational : q_edges.begin()->second.kind(),
                                              d, 1));
    const Kind kind = q_edges.empty() ? Kind::rational : q_edges.begin()->second.kind();
    return SimpDist(std::move(sc), kind, std::move(edges), std::move(isolated));
}

SimpDist act(const OutcomeLabeling& phi, const SimpDist& p) {
    const auto& sc = p.scenario();
    const int d = sc.d();
    if (static_cast<int>(phi.size()) != sc.num_vertices())
        throw err_arity("labeling size must match vertex count");
    std::vector<Dist> edges;
    for (int e = 0; e < sc.num_edges(); ++e) {
        const int ds = phi[sc.edge(e).source], dt = phi[sc.edge(e).target];
        edges.push_back(p.matrix(e).pushforward([&](const Outcome& x) {
            return Outcome{(x[0] + ds) % d, (x[1] + dt) % d};
        }));
    }
    std::map<int, Dist> isolated;
    for (auto& [v, pv] : p.isolated_marginals()) {
        const int dv = phi[v];
        isolated.emplace(v, pv.pushforward([&](const Outcome& x) { return Outcome{(x[0] + dv) % d}; }));
    }
    return SimpDist(p.scenario_ptr(), p.kind(), std::move(edges), std::move(isolated));
}

Dist compose(const SimpDist& p, const Step& s1, const Step& s2) {
    const auto& sc = p.scenario();
    Walk w(sc, {s1, s2});  // validates the shared vertex
    const int y = w.step_to(sc, 0);
    const Dist m1 = p.step_matrix(s1);
    const Dist m2 = p.step_matrix(s2);
    const Dist py = p.vertex_marginal(y);
    const int d = sc.d();
    Dist out(p.kind(), d);
    for (int c = 0; c < d; ++c) {
        const Scalar pc = py.at(Outcome{c});
        if (pc.is_zero()) continue;  // vanishing middle outcomes contribute zero
        for (int a = 0; a < d; ++a) {
            const Scalar m1ac = m1.at(Outcome{a, c});
            if (m1ac.is_zero()) continue;
            for (int b = 0; b < d; ++b) {
                const Scalar t = m1ac * m2.at(Outcome{c, b});
                if (!t.is_zero()) out.accumulate(Outcome{a, b}, t.div(pc));
            }
        }
    }
    return out;
}

Dist compose_walk(const SimpDist& p, const Walk& w) {
    const auto& sc = p.scenario();
    Dist acc = p.step_matrix(w.steps()[0]);
    for (int k = 1; k < w.length(); ++k) {
        // same conditional formula, folding the accumulated matrix on the left
        const int y = w.step_from(sc, k);
        const Dist m2 = p.step_matrix(w.steps()[k]);
        const Dist py = p.vertex_marginal(y);
        const int d = sc.d();
        Dist out(p.kind(), d);
        for (int c = 0; c < d; ++c) {
            const Scalar pc = py.at(Outcome{c});
            if (pc.is_zero()) continue;
            for (int a = 0; a < d; ++a) {
                const Scalar acc_ac = acc.at(Outcome{a, c});
                if (acc_ac.is_zero()) continue;
                for (int b = 0; b < d; ++b) {
                    const Scalar t = acc_ac * m2.at(Outcome{c, b});
                    if (!t.is_zero()) out.accumulate(Outcome{a, b}, t.div(pc));
                }
            }
        }
        acc = std::move(out);
    }
    return acc;
}

SimpDist restrict(const SimpDist& p, const std::set<std::string>& vertices,
                  const std::set<std::string>& edges) {
    const auto& sc = p.scenario();
    std::vector<std::string> vids;
    for (const auto& id : sc.vertex_ids())
        if (vertices.count(id)) vids.push_back(id);
    if (vids.size() != vertices.size()) throw err_not_subcomplex("unknown vertex in restriction");
    std::vector<std::tuple<std::string, std::string, std::string>> etriples;
    std::vector<Dist> mats;
    for (const auto& e : sc.edges()) {
        if (!edges.count(e.id)) continue;
        if (!vertices.count(sc.vertex_id(e.source)) || !vertices.count(sc.vertex_id(e.target)))
            throw err_not_subcomplex("edge " + e.id + " leaves the vertex subset");
        etriples.emplace_back(e.id, sc.vertex_id(e.source), sc.vertex_id(e.target));
        mats.push_back(p.matrix(sc.edge_index(e.id)));
    }
    if (etriples.size() != edges.size()) throw err_not_subcomplex("unknown edge in restriction");
    auto sub = std::make_shared<Scenario>(sc.d(), vids, etriples);
    std::map<int, Dist> isolated;
    for (int v = 0; v < sub->num_vertices(); ++v) {
        if (!sub->incident(v).empty()) continue;
        isolated.emplace(v, p.vertex_marginal(sc.vertex_index(sub->vertex_id(v))));
    }
    return SimpDist(std::move(sub), p.kind(), std::move(mats), std::move(isolated));
}

SimpDist restrict_to_circle(const SimpDist& p, const Circle& c) {
    const auto& sc = p.scenario();
    std::set<std::string> vs, es;
    for (int k = 0; k < c.length(); ++k) {
        es.insert(sc.edge(c.steps()[k].edge).id);
        vs.insert(sc.vertex_id(c.step_from(sc, k)));
        vs.insert(sc.vertex_id(c.step_to(sc, k)));
    }
    return restrict(p, vs, es);
}

SimpDist transport_collapse(const CollapseMap& cm, const SimpDist& p) {
    const auto& sc = p.scenario();
    const int e = sc.edge_index(cm.collapsed_edge);
    for (auto& [x, s] : p.matrix(e).weights())
        if (x[0] != x[1])
            throw err_not_collapsible("matrix on " + cm.collapsed_edge + " is not diagonal");
    std::vector<Dist> mats(cm.collapsed.num_edges(), Dist(p.kind(), sc.d()));
    for (int i = 0; i < sc.num_edges(); ++i)
        if (cm.edge_map[i] >= 0) mats[cm.edge_map[i]] = p.matrix(i);
    std::map<int, Dist> isolated;
    for (int v = 0; v < cm.collapsed.num_vertices(); ++v) {
        if (!cm.collapsed.incident(v).empty()) continue;
        // the merged vertex may end up isolated; both halves carry one marginal
        for (int u = 0; u < sc.num_vertices(); ++u)
            if (cm.vertex_map[u] == v) {
                isolated.emplace(v, p.vertex_marginal(u));
                break;
            }
    }
    return SimpDist(std::make_shared<Scenario>(cm.collapsed), p.kind(), std::move(mats),
                    std::move(isolated));
}

SimpDist pullback_collapse(const CollapseMap& cm, std::shared_ptr<const Scenario> source,
                           const SimpDist& collapsed) {
    const int e = source->edge_index(cm.collapsed_edge);
    const Dist pu = collapsed.vertex_marginal(cm.vertex_map[cm.kept_vertex]);
    Dist diag(collapsed.kind(), source->d());
    for (auto& [x, s] : pu.weights()) diag.accumulate(Outcome{x[0], x[0]}, s);
    std::vector<Dist> mats(source->num_edges(), Dist(collapsed.kind(), source->d()));
    mats[e] = std::move(diag);
    for (int i = 0; i < source->num_edges(); ++i)
        if (cm.edge_map[i] >= 0) mats[i] = collapsed.matrix(cm.edge_map[i]);
    std::map<int, Dist> isolated;
    for (int v = 0; v < source->num_vertices(); ++v)
        if (source->incident(v).empty())
            isolated.emplace(v, collapsed.vertex_marginal(cm.vertex_map[v]));
    return SimpDist(std::move(source), collapsed.kind(), std::move(mats), std::move(isolated));
}

SimpDist boolean_projection(const SimpDist& p) {
    std::vector<Dist> mats;
    for (int e = 0; e < p.scenario().num_edges(); ++e) mats.push_back(p.matrix(e).boolean_projection());
    std::map<int, Dist> isolated;
    for (auto& [v, pv] : p.isolated_marginals()) isolated.emplace(v, pv.boolean_projection());
    return SimpDist(p.scenario_ptr(), Kind::boolean, std::move(mats), std::move(isolated));
}

}  // namespace ctxlab
