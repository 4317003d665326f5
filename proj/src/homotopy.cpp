#include "ctxlab/homotopy.hpp"

#include <deque>
#include <numeric>

namespace ctxlab {

namespace {

void check_labeling(const Scenario& sc, const NerveLabeling& phi) {
    if (static_cast<int>(phi.size()) != sc.num_edges())
        throw err_arity("labeling size must match edge count");
    for (int g : phi)
        if (g < 0 || g >= sc.d()) throw err_arity("edge label outside Z_d");
}

BigInt pow_int(int base, int exp) {
    BigInt r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

int circle_invariant(const Scenario& sc, const Circle& c, const NerveLabeling& phi) {
    check_labeling(sc, phi);
    if (!c.is_circle()) throw err_not_composable("invariant is defined on circles");
    int acc = 0;
    for (const auto& s : c.steps())
        acc += s.forward ? phi[s.edge] : sc.d() - phi[s.edge];
    return acc % sc.d();
}

NullHomotopy is_null_homotopic(const Scenario& sc, const NerveLabeling& phi) {
    check_labeling(sc, phi);
    const int d = sc.d();
    // Propagate the cone potential by BFS; any edge whose closure fails
    // witnesses a circle with nonvanishing invariant.
    std::vector<int> psi(sc.num_vertices(), -1);
    for (int v0 = 0; v0 < sc.num_vertices(); ++v0) {
        if (psi[v0] >= 0) continue;
        psi[v0] = 0;
        std::deque<int> queue{v0};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (auto [e, slot] : sc.incident(v)) {
                int u = slot == 0 ? sc.edge(e).target : sc.edge(e).source;
                int val = slot == 0 ? (psi[v] + phi[e]) % d : (psi[v] + d - phi[e]) % d;
                if (psi[u] < 0) {
                    psi[u] = val;
                    queue.push_back(u);
                } else if (psi[u] != val) {
                    return {false, std::nullopt};
                }
            }
        }
    }
    return {true, psi};
}

BigInt count_null_homotopic(const Scenario& sc) {
    if (!is_connected(sc)) throw err_not_connected("counting formulas assume a connected scenario");
    return pow_int(sc.d(), sc.num_vertices() - 1);
}

BigInt count_non_null_homotopic(const Scenario& sc) {
    if (!is_connected(sc)) throw err_not_connected("counting formulas assume a connected scenario");
    return pow_int(sc.d(), sc.num_edges()) - pow_int(sc.d(), sc.num_vertices() - 1);
}

FaceStructure face_structure(const Scenario& sc, const NerveLabeling& phi) {
    check_labeling(sc, phi);
    if (!is_connected(sc)) throw err_not_connected("the face characterization assumes a connected scenario");
    const int d = sc.d();
    int g = d;  // <0> until some circle contributes
    for (const auto& c : cycle_basis(sc)) g = std::gcd(g, circle_invariant(sc, c, phi));
    FaceStructure f;
    f.subgroup_generator = g % d;
    f.subgroup_order = d / g;
    std::vector<bool> seen(d, false);
    for (int a = 0; a < d; ++a) {
        if (seen[a]) continue;
        std::vector<int> orbit;
        for (int x = a; !seen[x]; x = (x + g) % d) {
            seen[x] = true;
            orbit.push_back(x);
        }
        std::sort(orbit.begin(), orbit.end());
        f.orbits.push_back(std::move(orbit));
    }
    f.dimension = static_cast<int>(f.orbits.size()) - 1;
    return f;
}

SimpDist face_member(const Scenario& sc, const NerveLabeling& phi, const Dist& base_dist) {
    check_labeling(sc, phi);
    if (!is_connected(sc)) throw err_not_connected("face members need a connected scenario");
    const int d = sc.d();
    if (base_dist.d() != d || base_dist.arity() != 1)
        throw err_arity("base distribution must be a one-outcome distribution over Z_d");
    base_dist.validate();

    const FaceStructure f = face_structure(sc, phi);
    const int g = f.subgroup_generator == 0 ? d : f.subgroup_generator;
    for (int a = 0; a < d; ++a) {
        if (base_dist.at(Outcome{a}) != base_dist.at(Outcome{(a + g) % d}))
            throw err_not_invariant("base distribution is not invariant under the circle subgroup");
    }

    if (sc.num_vertices() == 0)
        return SimpDist(std::make_shared<Scenario>(sc), base_dist.kind(), {});

    // Vertex distributions: p_v = base * delta(tree offset), base anchored at
    // vertex 0; offsets follow any spanning walk and are well-defined because
    // the base is H-invariant.
    std::vector<int> offset(sc.num_vertices(), -1);
    offset[0] = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (auto [e, slot] : sc.incident(v)) {
            int u = slot == 0 ? sc.edge(e).target : sc.edge(e).source;
            if (offset[u] >= 0) continue;
            offset[u] = slot == 0 ? (offset[v] + phi[e]) % d : (offset[v] + d - phi[e]) % d;
            queue.push_back(u);
        }
    }
    auto vertex_dist = [&](int v) {
        const int o = offset[v];
        return base_dist.pushforward([&, o](const Outcome& x) { return Outcome{(x[0] + o) % d}; });
    };
    std::vector<Dist> mats;
    for (int e = 0; e < sc.num_edges(); ++e) {
        const Dist ps = vertex_dist(sc.edge(e).source);
        Dist m(base_dist.kind(), d);
        for (auto& [x, s] : ps.weights()) m.accumulate(Outcome{x[0], (x[0] + phi[e]) % d}, s);
        mats.push_back(std::move(m));
    }
    std::map<int, Dist> isolated;
    if (sc.num_edges() == 0 && sc.num_vertices() == 1) isolated.emplace(0, base_dist);
    return SimpDist(std::make_shared<Scenario>(sc), base_dist.kind(), std::move(mats),
                    std::move(isolated));
}

SimpDist unique_sc_vertex(const Scenario& sc, const NerveLabeling& phi) {
    const int d = sc.d();
    for (int k = 2; k * k <= d; ++k)
        if (d % k == 0) throw err_non_prime("uniqueness requires a prime outcome count");
    if (!is_connected(sc)) throw err_not_connected("the vertex construction needs a connected scenario");
    const FaceStructure f = face_structure(sc, phi);
    if (f.subgroup_order != d)
        throw err_null_homotopic("every circle invariant vanishes; the face is a full simplex");
    return face_member(sc, phi, Dist::uniform(Kind::rational, d, 1));
}

NerveLabeling nerve_labeling_of(const SimpDist& p) {
    if (!p.is_deterministic())
        throw PreconditionError("NotDeterministic", "nerve labelings come from deterministic distributions");
    const auto& sc = p.scenario();
    NerveLabeling phi(sc.num_edges());
    for (int e = 0; e < sc.num_edges(); ++e) {
        const Outcome& x = p.matrix(e).weights().front().first;
        phi[e] = (x[1] - x[0] + sc.d()) % sc.d();
    }
    return phi;
}

}  // namespace ctxlab
