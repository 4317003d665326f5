#include "ctxlab/dist.hpp"

namespace ctxlab {

Dist section_tuple(const Dist& p) {
    Dist q(p.kind(), p.d());
    const Scalar inv_d = p.kind() == Kind::boolean
                             ? Scalar::boolean(true)
                             : Scalar::one(Kind::rational).div(Scalar::rational(p.d(), 1));
    for (auto& [x, s] : p.weights()) {
        for (int m = 0; m < p.d(); ++m) {
            q.accumulate(Outcome({m}).concat(x), s * inv_d);
        }
    }
    return q;
}

Dist drop_first(const Dist& p) {
    if (p.arity() < 1) throw err_arity("drop_first needs arity >= 1");
    return p.pushforward([](const Outcome& x) { return x.slice(1, x.arity()); });
}

Dist glue(const Dist& P, const Dist& Q, int overlap) {
    const int a = P.arity(), b = Q.arity();
    if (overlap < 0 || overlap > a || overlap > b) throw err_arity("glue overlap out of range");
    if (P.kind() != Q.kind()) throw err_semiring("glue across semirings");
    if (P.d() != Q.d()) throw err_arity("glue requires one outcome group");

    auto p_shared = P.pushforward([&](const Outcome& x) { return x.slice(a - overlap, a); });
    auto q_shared = Q.pushforward([&](const Outcome& y) { return y.slice(0, overlap); });
    if (p_shared != q_shared) throw err_margin("glue overlap marginals disagree");

    Dist r(P.kind(), P.d());
    for (auto& [x, s] : P.weights()) {
        const Outcome shared = x.slice(a - overlap, a);
        const Scalar marg = p_shared.at(shared);
        if (marg.is_zero()) continue;  // zero-marginal fibers contribute nothing
        for (auto& [y, t] : Q.weights()) {
            if (!(y.slice(0, overlap) == shared)) continue;
            r.accumulate(x.concat(y.slice(overlap, b)), (s * t).div(marg));
        }
    }
    return r;
}

}  // namespace ctxlab
