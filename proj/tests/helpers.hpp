#pragma once

// Shared builders for the test suites: small scenarios, literal edge
// matrices, and seeded random distributions.

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ctxlab/simpdist.hpp"

namespace ctxlab::testing {

// n-cycle v0..v{n-1} with ei: vi -> v{(i+1) mod n}; n = 1 is a single loop.
inline std::shared_ptr<const Scenario> cycle_sc(int n, int d = 2) {
    std::vector<std::string> vs;
    std::vector<std::tuple<std::string, std::string, std::string>> es;
    for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        es.emplace_back("e" + std::to_string(i), "v" + std::to_string(i),
                        "v" + std::to_string((i + 1) % n));
    return std::make_shared<Scenario>(d, vs, es);
}

// Path v0..v{n} with ei: vi -> v{i+1}, n edges.
inline std::shared_ptr<const Scenario> path_sc(int n_edges, int d = 2) {
    std::vector<std::string> vs;
    std::vector<std::tuple<std::string, std::string, std::string>> es;
    for (int i = 0; i <= n_edges; ++i) vs.push_back("v" + std::to_string(i));
    for (int i = 0; i < n_edges; ++i)
        es.emplace_back("e" + std::to_string(i), "v" + std::to_string(i),
                        "v" + std::to_string(i + 1));
    return std::make_shared<Scenario>(d, vs, es);
}

inline Scalar rq(long num, long den = 1) { return Scalar::rational(num, den); }

// d x d matrix over pairs: rows[a][b] is the weight of (a at source, b at target).
inline Dist rmat(const std::vector<std::vector<Scalar>>& rows) {
    const int d = static_cast<int>(rows.size());
    Dist::Weights w;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            if (!rows[a][b].is_zero()) w.emplace_back(Outcome{a, b}, rows[a][b]);
    return Dist::from_weights(Kind::rational, d, std::move(w));
}

inline Dist bmat(const std::vector<std::vector<int>>& rows) {
    const int d = static_cast<int>(rows.size());
    Dist::Weights w;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            if (rows[a][b]) w.emplace_back(Outcome{a, b}, Scalar::boolean(true));
    return Dist::from_weights(Kind::boolean, d, std::move(w));
}

inline Dist p_plus() { return rmat({{rq(1, 2), rq(0)}, {rq(0), rq(1, 2)}}); }
inline Dist p_minus() { return rmat({{rq(0), rq(1, 2)}, {rq(1, 2), rq(0)}}); }

// All points of Z_d^arity in lexicographic order.
inline std::vector<Outcome> all_outcomes(int d, int arity) {
    std::vector<Outcome> out;
    std::vector<int> x(arity, 0);
    long total = 1;
    for (int i = 0; i < arity; ++i) total *= d;
    for (long n = 0; n < total; ++n) {
        out.emplace_back(x);
        for (int i = arity - 1; i >= 0; --i) {
            if (++x[i] < d) break;
            x[i] = 0;
        }
    }
    return out;
}

// Random normalized rational distribution with small integer weights.
inline Dist random_rdist(std::mt19937_64& rng, int d, int arity, int parts = 3) {
    auto pts = all_outcomes(d, arity);
    const int k = 1 + static_cast<int>(rng() % parts);
    std::vector<long> raw(pts.size(), 0);
    long total = 0;
    for (int i = 0; i < k; ++i) {
        const size_t at = rng() % pts.size();
        const long w = 1 + static_cast<long>(rng() % 4);
        raw[at] += w;
        total += w;
    }
    Dist::Weights w;
    for (size_t i = 0; i < pts.size(); ++i)
        if (raw[i] > 0) w.emplace_back(pts[i], rq(raw[i], total));
    return Dist::from_weights(Kind::rational, d, std::move(w));
}

// Random Boolean distribution with a nonempty support.
inline Dist random_bdist(std::mt19937_64& rng, int d, int arity) {
    auto pts = all_outcomes(d, arity);
    Dist::Weights w;
    for (auto& x : pts)
        if (rng() % 2) w.emplace_back(x, Scalar::boolean(true));
    if (w.empty()) w.emplace_back(pts[rng() % pts.size()], Scalar::boolean(true));
    return Dist::from_weights(Kind::boolean, d, std::move(w));
}

// Random edge matrices for every edge of sc, plus marginals for isolated
// vertices, assembled into a SimpDist. Rational kind.
inline SimpDist random_simpdist(std::mt19937_64& rng, std::shared_ptr<const Scenario> sc,
                                int parts = 3) {
    // Sampling raw matrices independently would break vertex marginals, so
    // blend a deterministic labeling with a T-section: both sides share every
    // marginal by construction.
    const int d = sc->d();
    OutcomeLabeling phi(sc->num_vertices());
    for (auto& x : phi) x = static_cast<int>(rng() % d);
    SimpDist det = deterministic(sc, phi, Kind::rational);
    if (sc->num_edges() == 0) return det;

    std::map<std::string, Dist> q;
    for (auto& e : sc->edges()) q.emplace(e.id, random_rdist(rng, d, 1, parts));
    SimpDist t = section_T(sc, q);

    const long a = 1 + static_cast<long>(rng() % 3);
    const long b = 1 + static_cast<long>(rng() % 3);
    const Scalar la = rq(a, a + b), lb = rq(b, a + b);
    std::vector<Dist> mixed;
    for (int e = 0; e < sc->num_edges(); ++e) {
        Dist m(Kind::rational, d);
        for (auto& [x, s] : det.matrix(e).weights()) m.accumulate(x, s * la);
        for (auto& [x, s] : t.matrix(e).weights()) m.accumulate(x, s * lb);
        mixed.push_back(std::move(m));
    }
    std::map<int, Dist> iso;
    for (auto& [v, m] : det.isolated_marginals()) {
        Dist mv(Kind::rational, d);
        for (auto& [x, s] : m.weights()) mv.accumulate(x, s * la);
        for (auto& [x, s] : t.isolated_marginals().at(v).weights()) mv.accumulate(x, s * lb);
        iso.emplace(v, std::move(mv));
    }
    return SimpDist(sc, Kind::rational, std::move(mixed), std::move(iso));
}

}  // namespace ctxlab::testing
