#include "ctxlab/logiccat.hpp"

#include <algorithm>
#include <deque>

namespace ctxlab {

BoolMatrix BoolMatrix::identity(int d) {
    BoolMatrix m = zero(d);
    for (int a = 0; a < d; ++a) m = m.with_entry(a, a);
    return m;
}

BoolMatrix BoolMatrix::ones(int d) {
    BoolMatrix m = zero(d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) m = m.with_entry(a, b);
    return m;
}

BoolMatrix BoolMatrix::antidiag(int d) {
    BoolMatrix m = zero(d);
    for (int a = 0; a < d; ++a) m = m.with_entry(a, d - 1 - a);
    return m;
}

BoolMatrix BoolMatrix::operator*(const BoolMatrix& o) const {
    BoolMatrix r = zero(d_);
    for (int a = 0; a < d_; ++a)
        for (int c = 0; c < d_; ++c) {
            if (!entry(a, c)) continue;
            for (int b = 0; b < d_; ++b)
                if (o.entry(c, b)) r = r.with_entry(a, b);
        }
    return r;
}

BoolMatrix BoolMatrix::transpose() const {
    BoolMatrix r = zero(d_);
    for (int a = 0; a < d_; ++a)
        for (int b = 0; b < d_; ++b)
            if (entry(a, b)) r = r.with_entry(b, a);
    return r;
}

std::string BoolMatrix::name() const {
    if (d_ != 2) return "";
    if (*this == bm_I()) return "I";
    if (*this == bm_A()) return "A";
    if (*this == bm_B()) return "B";
    if (*this == bm_BT()) return "B^T";
    if (*this == bm_D()) return "D";
    if (*this == bm_U()) return "U";
    if (*this == bm_antidiag()) return "antidiag";
    return "";
}

std::vector<std::string> BoolMatrix::rows() const {
    std::vector<std::string> r;
    for (int a = 0; a < d_; ++a) {
        std::string row;
        for (int b = 0; b < d_; ++b) row += entry(a, b) ? '1' : '0';
        r.push_back(row);
    }
    return r;
}

BoolMatrix BoolMatrix::from_dist(const Dist& m) {
    if (m.arity() != 2) throw err_arity("expected a distribution on pairs");
    BoolMatrix r = zero(m.d());
    for (auto& [x, s] : m.weights())
        if (!s.is_zero()) r = r.with_entry(x[0], x[1]);
    return r;
}

Dist BoolMatrix::to_dist() const {
    Dist m(Kind::boolean, d_);
    for (int a = 0; a < d_; ++a)
        for (int b = 0; b < d_; ++b)
            if (entry(a, b)) m.accumulate(Outcome{a, b}, Scalar::boolean(true));
    return m;
}

BoolMatrix bm_I() { return BoolMatrix::identity(2); }
BoolMatrix bm_A() { return BoolMatrix::zero(2).with_entry(0, 0).with_entry(0, 1).with_entry(1, 0); }
BoolMatrix bm_B() { return BoolMatrix::zero(2).with_entry(0, 0).with_entry(0, 1).with_entry(1, 1); }
BoolMatrix bm_BT() { return bm_B().transpose(); }
BoolMatrix bm_D() { return BoolMatrix::zero(2).with_entry(0, 1).with_entry(1, 0).with_entry(1, 1); }
BoolMatrix bm_U() { return BoolMatrix::ones(2); }
BoolMatrix bm_antidiag() { return BoolMatrix::antidiag(2); }

LogicalCategory::LogicalCategory(int d, std::vector<std::string> objects)
    : d_(d), objects_(std::move(objects)) {
    if (d < 2 || d > BoolMatrix::max_d)
        throw err_arity("logical categories support 2 <= d <= " + std::to_string(BoolMatrix::max_d));
    hom_.assign(objects_.size() * objects_.size(), std::vector<uint64_t>(words_per_hom(), 0));
}

bool LogicalCategory::contains(int x, int y, const BoolMatrix& m) const {
    const auto& bs = hom_[x * num_objects() + y];
    return (bs[m.bits() / 64] >> (m.bits() % 64)) & 1u;
}

void LogicalCategory::insert(int x, int y, const BoolMatrix& m) {
    auto& bs = hom_[x * num_objects() + y];
    bs[m.bits() / 64] |= uint64_t{1} << (m.bits() % 64);
}

std::vector<BoolMatrix> LogicalCategory::hom(int x, int y) const {
    std::vector<BoolMatrix> r;
    const auto& bs = hom_[x * num_objects() + y];
    for (uint32_t code = 0; code < (1u << (d_ * d_)); ++code)
        if ((bs[code / 64] >> (code % 64)) & 1u) r.emplace_back(d_, code);
    return r;
}

BoolMatrix LogicalCategory::allowed_pairs(int x, int y) const {
    uint32_t acc = BoolMatrix::ones(d_).bits();
    const auto& bs = hom_[x * num_objects() + y];
    for (uint32_t code = 0; code < (1u << (d_ * d_)); ++code)
        if ((bs[code / 64] >> (code % 64)) & 1u) acc &= code;
    return {d_, acc};
}

LogicalCategory build_category(const SimpDist& p) {
    if (p.kind() != Kind::boolean)
        throw err_semiring("logical categories are built from Boolean distributions");
    const auto& sc = p.scenario();
    LogicalCategory cat(sc.d(), sc.vertex_ids());
    const int n = sc.num_vertices();

    std::deque<std::tuple<int, int, BoolMatrix>> work;
    auto add = [&](int x, int y, const BoolMatrix& m) {
        if (m.is_zero() || cat.contains(x, y, m)) return;
        cat.insert(x, y, m);
        work.emplace_back(x, y, m);
    };
    for (int x = 0; x < n; ++x) add(x, x, BoolMatrix::identity(sc.d()));
    for (int e = 0; e < sc.num_edges(); ++e) {
        const BoolMatrix m = BoolMatrix::from_dist(p.matrix(e));
        add(sc.edge(e).source, sc.edge(e).target, m);
        add(sc.edge(e).target, sc.edge(e).source, m.transpose());
    }
    while (!work.empty()) {
        auto [x, y, m] = work.front();
        work.pop_front();
        for (int z = 0; z < n; ++z) {
            for (const BoolMatrix& q : cat.hom(y, z)) add(x, z, m * q);
            for (const BoolMatrix& q : cat.hom(z, x)) add(z, y, q * m);
        }
    }
    return cat;
}

std::vector<OutcomeLabeling> category_support(const LogicalCategory& cat) {
    const int n = cat.num_objects();
    const int d = cat.d();
    std::vector<BoolMatrix> allowed;
    allowed.reserve(n * n);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) allowed.push_back(cat.allowed_pairs(x, y));

    std::vector<OutcomeLabeling> out;
    OutcomeLabeling phi(n, -1);
    auto assign = [&](auto&& self, int v) -> void {
        if (v == n) {
            out.push_back(phi);
            return;
        }
        for (int a = 0; a < d; ++a) {
            phi[v] = a;
            bool ok = allowed[v * n + v].entry(a, a);
            for (int u = 0; ok && u < v; ++u)
                ok = allowed[u * n + v].entry(phi[u], a) && allowed[v * n + u].entry(a, phi[u]);
            if (ok) self(self, v + 1);
        }
        phi[v] = -1;
    };
    assign(assign, 0);
    return out;
}

bool semigroup_table_check() {
    const BoolMatrix A = bm_A(), B = bm_B(), BT = bm_BT(), D = bm_D(), U = bm_U();
    const std::vector<BoolMatrix> G{A, B, BT, D, U};
    for (const auto& M : G)
        if (!(U * M == U && M * U == U)) return false;                       // (1)
    if (!(U.transpose() == U && A.transpose() == A && D.transpose() == D)) return false;  // (2)
    if (!(A * A == U && D * D == U && B * B == B)) return false;             // (3)
    for (const auto& M : G)
        if (!(M * M.transpose() == U && M.transpose() * M == U)) return false;  // (4)
    if (!(A * D == B && D * A == BT)) return false;                          // (5)
    if (!(A * B == U && BT * A == U && B * A == A && A * BT == A)) return false;  // (6)
    if (!(B * D == U && D * BT == U && D * B == D && BT * D == D)) return false;  // (6)
    return true;
}

bool sc_criterion(const LogicalCategory& cat) {
    if (cat.d() != 2) throw err_arity("the endomorphism criterion is stated for d = 2");
    for (int x = 0; x < cat.num_objects(); ++x) {
        if (cat.contains(x, x, bm_antidiag())) return true;
        if (cat.contains(x, x, bm_A()) && cat.contains(x, x, bm_D())) return true;
    }
    return false;
}

bool boundary_extendable(const Dist& m) {
    if (m.arity() != 2) throw err_arity("expected a distribution on pairs");
    const int d = m.d();
    std::vector<bool> row(d, false), col(d, false);
    for (auto& [x, s] : m.weights()) {
        row[x[0]] = true;
        col[x[1]] = true;
    }
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            if (row[a] && col[b] && m.at(Outcome{a, b}).is_zero()) return false;
    return true;
}

namespace {

bool diag_support(const Dist& m) {
    for (auto& [x, s] : m.weights())
        if (x[0] != x[1]) return false;
    return true;
}

bool antidiag_support(const Dist& m) {
    for (auto& [x, s] : m.weights())
        if ((x[0] + x[1]) % m.d() != m.d() - 1) return false;
    return true;
}

}  // namespace

ReductionTrace reduce_and_decide(const SimpDist& input) {
    if (input.kind() != Kind::boolean) throw err_semiring("the reduction runs on Boolean distributions");
    if (input.d() != 2) throw err_arity("the reduction is stated for d = 2");
    ReductionTrace trace;

    // Drop edges whose matrices extend over a filled boundary; they never
    // constrain the support. Patterns are stable under the later steps, so one
    // pass suffices.
    SimpDist p = input;
    {
        std::set<std::string> keep_edges, verts(p.scenario().vertex_ids().begin(),
                                                p.scenario().vertex_ids().end());
        for (const auto& e : p.scenario().edges()) {
            if (boundary_extendable(p.matrix(p.scenario().edge_index(e.id)))) {
                trace.steps.push_back({ReductionStep::Op::drop_boundary_extendable, e.id, ""});
            } else {
                keep_edges.insert(e.id);
            }
        }
        p = restrict(p, verts, keep_edges);
    }

    // Collapse every non-loop edge with (anti)diagonal support, normalizing
    // antidiagonals with the group action first. Each pass removes one edge.
    for (;;) {
        const auto& sc = p.scenario();
        int found = -1;
        for (int e = 0; e < sc.num_edges(); ++e) {
            if (sc.is_loop(e)) continue;
            if (diag_support(p.matrix(e)) || antidiag_support(p.matrix(e))) {
                found = e;
                break;
            }
        }
        if (found < 0) break;
        const std::string id = sc.edge(found).id;
        if (antidiag_support(p.matrix(found))) {
            OutcomeLabeling phi(sc.num_vertices(), 0);
            phi[sc.edge(found).target] = 1;
            p = act(phi, p);
            trace.steps.push_back({ReductionStep::Op::normalize_antidiagonal, id, ""});
        }
        p = transport_collapse(collapse_edge(p.scenario(), id), p);
        trace.steps.push_back({ReductionStep::Op::collapse_diagonal, id, ""});
    }

    // Loops with diagonal support constrain nothing; discard them.
    {
        std::set<std::string> keep_edges, verts(p.scenario().vertex_ids().begin(),
                                                p.scenario().vertex_ids().end());
        for (const auto& e : p.scenario().edges()) {
            const int ei = p.scenario().edge_index(e.id);
            if (p.scenario().is_loop(ei) && diag_support(p.matrix(ei))) {
                trace.steps.push_back({ReductionStep::Op::drop_identity_loop, e.id, ""});
            } else {
                keep_edges.insert(e.id);
            }
        }
        p = restrict(p, verts, keep_edges);
    }

    // A loop carrying the antidiagonal is a one-edge circle with no section.
    for (const auto& e : p.scenario().edges()) {
        const int ei = p.scenario().edge_index(e.id);
        if (p.scenario().is_loop(ei) && antidiag_support(p.matrix(ei))) {
            trace.steps.push_back({ReductionStep::Op::antidiagonal_loop, e.id, ""});
            trace.strongly_contextual = true;
            return trace;
        }
    }

    // All remaining matrices are among A, B, B^T, D: the A/D endomorphism
    // pair decides, and otherwise the category has non-empty support.
    const LogicalCategory cat = build_category(p);
    for (int x = 0; x < cat.num_objects(); ++x) {
        if (cat.contains(x, x, bm_A()) && cat.contains(x, x, bm_D())) {
            trace.steps.push_back({ReductionStep::Op::endomorphism_pair, "", cat.objects()[x]});
            trace.strongly_contextual = true;
            return trace;
        }
    }
    trace.steps.push_back({ReductionStep::Op::nonempty_support, "", ""});
    trace.strongly_contextual = false;
    return trace;
}

}  // namespace ctxlab
