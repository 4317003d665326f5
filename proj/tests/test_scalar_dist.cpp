#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ctxlab/dist.hpp"
#include "helpers.hpp"

using namespace ctxlab;
using namespace ctxlab::testing;

TEST_CASE("rational scalars are exact and kept in lowest terms") {
    CHECK(rq(1, 3) + rq(1, 6) == rq(1, 2));
    CHECK(rq(2, 4) == rq(1, 2));
    CHECK(rq(1, 2).to_string() == "1/2");
    CHECK(rq(2, 4).to_string() == "1/2");
    CHECK(rq(3).to_string() == "3/1");
    CHECK(rq(0, 5).is_zero());
    CHECK(rq(7, 7).is_one());
    CHECK(rq(1, 2) * rq(2, 3) == rq(1, 3));
    CHECK(rq(1, 2).div(rq(2, 3)) == rq(3, 4));

    // A chain of operations that would drift under floating point.
    Scalar s = Scalar::zero(Kind::rational);
    for (int i = 0; i < 100; ++i) s += rq(1, 300);
    CHECK(s == rq(1, 3));
}

TEST_CASE("rational parsing round-trips and rejects malformed input") {
    CHECK(Scalar::parse_rational("2/4") == rq(1, 2));
    CHECK(Scalar::parse_rational("7") == rq(7));
    CHECK(Scalar::parse_rational("0/3").is_zero());
    for (long num : {0L, 1L, 5L, 12L})
        for (long den : {1L, 2L, 3L, 7L}) {
            Scalar s = rq(num, den);
            CHECK(Scalar::parse_rational(s.to_string()) == s);
        }
    CHECK_THROWS_AS(Scalar::parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(Scalar::parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(Scalar::parse_rational("1/-2"), ParseError);
    CHECK_THROWS_AS(Scalar::parse_rational(""), ParseError);
    CHECK_THROWS_AS(Scalar::parse_rational("1/2/3"), ParseError);
    CHECK_THROWS_AS(Scalar::rational(BigRat(-1, 2)), PreconditionError);
}

TEST_CASE("boolean scalars form the OR/AND algebra") {
    const Scalar t = Scalar::boolean(true), f = Scalar::boolean(false);
    CHECK(f + f == f);
    CHECK(f + t == t);
    CHECK(t + f == t);
    CHECK(t + t == t);
    CHECK(f * f == f);
    CHECK(f * t == f);
    CHECK(t * f == f);
    CHECK(t * t == t);

    // Division by the only nonzero element is the identity.
    CHECK(t.div(t) == t);
    CHECK(f.div(t) == f);
    CHECK_THROWS_AS(t.div(f), PreconditionError);
    CHECK_THROWS_AS(rq(1, 2).div(rq(0)), PreconditionError);
}

TEST_CASE("mixed-kind arithmetic is rejected") {
    CHECK_THROWS_AS(rq(1, 2) + Scalar::boolean(true), PreconditionError);
    CHECK_THROWS_AS(rq(1, 2) * Scalar::boolean(false), PreconditionError);
    try {
        rq(1) + Scalar::boolean(true);
        CHECK(false);
    } catch (const PreconditionError& e) {
        CHECK(e.code == "WrongSemiring");
    }
}

TEST_CASE("both semirings are zero-sum-free") {
    std::vector<Scalar> rs = {rq(1, 3), rq(2, 5), rq(7), rq(1, 100)};
    for (auto& a : rs)
        for (auto& b : rs) CHECK_FALSE((a + b).is_zero());
    const Scalar t = Scalar::boolean(true);
    CHECK_FALSE((t + t).is_zero());
    CHECK_FALSE((t + Scalar::boolean(false)).is_zero());
}

TEST_CASE("boolean projection of scalars is a semiring homomorphism") {
    std::vector<Scalar> rs = {rq(0), rq(1, 3), rq(2, 5), rq(1)};
    for (auto& a : rs)
        for (auto& b : rs) {
            CHECK((a + b).boolean_projection() ==
                  a.boolean_projection() + b.boolean_projection());
            CHECK((a * b).boolean_projection() ==
                  a.boolean_projection() * b.boolean_projection());
        }
    CHECK(rq(0).boolean_projection() == Scalar::boolean(false));
    CHECK(rq(1, 7).boolean_projection() == Scalar::boolean(true));
}

TEST_CASE("delta distributions and their pushforwards") {
    Dist d0 = Dist::delta(Kind::rational, 2, Outcome{0});
    CHECK(d0.weights().size() == 1);
    CHECK(d0.at(Outcome{0}).is_one());
    CHECK(d0.at(Outcome{1}).is_zero());
    CHECK(d0.is_delta());
    CHECK(d0.is_normalized());

    Dist d10 = Dist::delta(Kind::rational, 2, Outcome{1, 0});
    CHECK(d10.at(Outcome{1, 0}).is_one());
    CHECK(d10.arity() == 2);

    // Naturality: pushing a delta forward lands on the delta of the image.
    auto ident = [](const Outcome& x) { return x; };
    CHECK(Dist::delta(Kind::rational, 2, Outcome{1}).pushforward(ident) ==
          Dist::delta(Kind::rational, 2, Outcome{1}));
    auto first = [](const Outcome& x) { return x.slice(0, 1); };
    CHECK(d10.pushforward(first) == Dist::delta(Kind::rational, 2, Outcome{1}));
}

TEST_CASE("pushforward sums fibers") {
    auto first = [](const Outcome& x) { return x.slice(0, 1); };

    Dist p = Dist::from_weights(Kind::rational, 2,
                                {{Outcome{0, 0}, rq(1, 2)}, {Outcome{1, 1}, rq(1, 2)}});
    Dist q = p.pushforward(first);
    CHECK(q.at(Outcome{0}) == rq(1, 2));
    CHECK(q.at(Outcome{1}) == rq(1, 2));

    Dist b = Dist::from_weights(Kind::boolean, 2,
                                {{Outcome{0, 1}, Scalar::boolean(true)},
                                 {Outcome{1, 0}, Scalar::boolean(true)}});
    Dist qb = b.pushforward(first);
    CHECK(qb.at(Outcome{0}) == Scalar::boolean(true));
    CHECK(qb.at(Outcome{1}) == Scalar::boolean(true));

    // Fibers that collide must OR, not double-count, on the Boolean side.
    auto collapse = [](const Outcome&) { return Outcome{0}; };
    CHECK(b.pushforward(collapse) == Dist::delta(Kind::boolean, 2, Outcome{0}));
}

TEST_CASE("pushforward is functorial") {
    std::mt19937_64 rng(11);
    auto ident = [](const Outcome& x) { return x; };
    auto first = [](const Outcome& x) { return x.slice(0, 1); };
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 2);
        Dist p = random_rdist(rng, d, 2);
        CHECK(p.pushforward(ident) == p);
        auto shift = [d](const Outcome& x) { return Outcome{(x[0] + 1) % d}; };
        auto composed = [&](const Outcome& x) { return shift(first(x)); };
        CHECK(p.pushforward(first).pushforward(shift) == p.pushforward(composed));
    }
}

TEST_CASE("convolution over Z_d^n") {
    const Kind R = Kind::rational;
    CHECK(Dist::delta(R, 2, Outcome{1}).convolve(Dist::delta(R, 2, Outcome{1})) ==
          Dist::delta(R, 2, Outcome{0}));

    Dist p = Dist::from_weights(R, 2, {{Outcome{0}, rq(1, 3)}, {Outcome{1}, rq(2, 3)}});
    Dist shifted = p.convolve(Dist::delta(R, 2, Outcome{1}));
    CHECK(shifted.at(Outcome{0}) == rq(2, 3));
    CHECK(shifted.at(Outcome{1}) == rq(1, 3));

    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 2);
        Dist q = random_rdist(rng, d, 1);
        CHECK(Dist::uniform(R, d, 1).convolve(q) == Dist::uniform(R, d, 1));
        // Units, commutativity, associativity.
        Dist e = Dist::delta(R, d, Outcome{0});
        CHECK(q.convolve(e) == q);
        Dist r = random_rdist(rng, d, 1), s = random_rdist(rng, d, 1);
        CHECK(q.convolve(r) == r.convolve(q));
        CHECK(q.convolve(r).convolve(s) == q.convolve(r.convolve(s)));
    }

    CHECK_THROWS_AS(Dist::delta(R, 2, Outcome{0}).convolve(
                        Dist::delta(Kind::boolean, 2, Outcome{0})),
                    PreconditionError);
    CHECK_THROWS_AS(Dist::delta(R, 2, Outcome{0}).convolve(Dist::delta(R, 2, Outcome{0, 0})),
                    PreconditionError);
}

TEST_CASE("boolean projection of distributions") {
    Dist half = Dist::from_weights(Kind::rational, 2,
                                   {{Outcome{0}, rq(1, 2)}, {Outcome{1}, rq(1, 2)}});
    Dist proj = half.boolean_projection();
    CHECK(proj.kind() == Kind::boolean);
    CHECK(proj.at(Outcome{0}) == Scalar::boolean(true));
    CHECK(proj.at(Outcome{1}) == Scalar::boolean(true));
    CHECK(Dist::delta(Kind::rational, 2, Outcome{0}).boolean_projection() ==
          Dist::delta(Kind::boolean, 2, Outcome{0}));
    CHECK(Dist::delta(Kind::rational, 2, Outcome{0, 0}).boolean_projection() ==
          Dist::delta(Kind::boolean, 2, Outcome{0, 0}));

    // The projection is functorial and monoidal: it commutes with
    // pushforward and carries convolution to Boolean convolution.
    std::mt19937_64 rng(13);
    auto first = [](const Outcome& x) { return x.slice(0, 1); };
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 2);
        Dist p = random_rdist(rng, d, 2), q = random_rdist(rng, d, 2);
        CHECK(p.pushforward(first).boolean_projection() ==
              p.boolean_projection().pushforward(first));
        CHECK(p.convolve(q).boolean_projection() ==
              p.boolean_projection().convolve(q.boolean_projection()));
    }
}

TEST_CASE("distribution construction canonicalizes and validates") {
    // Duplicate outcomes merge by semiring addition.
    Dist merged = Dist::from_weights(Kind::rational, 2,
                                     {{Outcome{0}, rq(1, 2)}, {Outcome{0}, rq(1, 2)}});
    CHECK(merged.is_delta());

    // Zero weights are never stored.
    Dist p(Kind::rational, 2);
    p.accumulate(Outcome{0}, rq(0));
    CHECK(p.empty());
    p.accumulate(Outcome{1}, rq(1));
    CHECK(p.weights().size() == 1);

    CHECK_THROWS_AS(Dist::from_weights(Kind::rational, 2,
                                       {{Outcome{0}, rq(1, 2)}, {Outcome{1}, rq(1, 3)}}),
                    PreconditionError);
    CHECK_THROWS_AS(Dist::from_weights(Kind::rational, 2, {{Outcome{2}, rq(1)}}),
                    PreconditionError);
    CHECK_THROWS_AS(Dist::from_weights(Kind::rational, 2,
                                       {{Outcome{0}, rq(1, 2)}, {Outcome{0, 0}, rq(1, 2)}}),
                    PreconditionError);
    CHECK_THROWS_AS(p.accumulate(Outcome{0}, Scalar::boolean(true)), PreconditionError);

    // Weights are kept sorted by outcome regardless of insertion order.
    Dist q = Dist::from_weights(Kind::rational, 2,
                                {{Outcome{1}, rq(1, 2)}, {Outcome{0}, rq(1, 2)}});
    CHECK(q.weights().front().first == Outcome{0});
}

TEST_CASE("uniform distributions") {
    Dist u = Dist::uniform(Kind::rational, 3, 2);
    CHECK(u.weights().size() == 9);
    CHECK(u.at(Outcome{2, 1}) == rq(1, 9));
    CHECK(u.is_normalized());
    Dist ub = Dist::uniform(Kind::boolean, 2, 1);
    CHECK(ub.at(Outcome{0}) == Scalar::boolean(true));
    CHECK(ub.at(Outcome{1}) == Scalar::boolean(true));
}

TEST_CASE("tuple section splits uniformly and drop_first recovers the input") {
    Dist d1 = Dist::delta(Kind::rational, 2, Outcome{1});
    Dist t = section_tuple(d1);
    CHECK(t.at(Outcome{0, 1}) == rq(1, 2));
    CHECK(t.at(Outcome{1, 1}) == rq(1, 2));
    CHECK(t.is_normalized());

    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 2);
        const int arity = 1 + static_cast<int>(rng() % 3);
        Dist p = random_rdist(rng, d, arity);
        CHECK(drop_first(section_tuple(p)) == p);
        Dist b = random_bdist(rng, d, arity);
        CHECK(drop_first(section_tuple(b)) == b);
    }
    CHECK_THROWS_AS(drop_first(Dist::delta(Kind::rational, 2, Outcome{})), PreconditionError);
}

TEST_CASE("tuple section intertwines convolution") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 2);
        const int arity = 1 + static_cast<int>(rng() % 2);
        Dist p = random_rdist(rng, d, arity), q = random_rdist(rng, d, arity);
        CHECK(section_tuple(p.convolve(q)) == section_tuple(p).convolve(section_tuple(q)));
    }
}

TEST_CASE("glue multiplies conditionals over a shared overlap") {
    const Kind R = Kind::rational;
    Dist u2 = Dist::uniform(R, 2, 2);
    CHECK(glue(u2, u2, 1) == Dist::uniform(R, 2, 3));

    // Overlap zero is the product distribution.
    Dist a = Dist::from_weights(R, 2, {{Outcome{0}, rq(1, 3)}, {Outcome{1}, rq(2, 3)}});
    Dist prod = glue(a, a, 0);
    CHECK(prod.at(Outcome{0, 1}) == rq(2, 9));
    CHECK(prod.at(Outcome{1, 1}) == rq(4, 9));

    // Full overlap is the identity.
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        Dist p = random_rdist(rng, 2, 2);
        CHECK(glue(p, p, 2) == p);
        CHECK(glue(p, p, 2).is_normalized());
    }

    // Gluing a distribution with its own marginal along the overlap
    // reproduces it.
    auto last = [](const Outcome& x) { return x.slice(x.arity() - 1, x.arity()); };
    for (int trial = 0; trial < 20; ++trial) {
        Dist p = random_rdist(rng, 2, 2);
        CHECK(glue(p, p.pushforward(last), 1) == p);
    }

    CHECK_THROWS_AS(glue(Dist::delta(R, 2, Outcome{0, 0}), Dist::delta(R, 2, Outcome{1, 1}), 1),
                    PreconditionError);
    try {
        glue(Dist::delta(R, 2, Outcome{0, 0}), Dist::delta(R, 2, Outcome{1, 1}), 1);
        CHECK(false);
    } catch (const PreconditionError& e) {
        CHECK(e.code == "MarginMismatch");
    }
    CHECK_THROWS_AS(glue(u2, u2, 3), PreconditionError);
}

TEST_CASE("glue stays exact and normalized on random compatible pairs") {
    std::mt19937_64 rng(17);
    auto first = [](const Outcome& x) { return x.slice(0, 1); };
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 2);
        Dist p = random_rdist(rng, d, 2);
        // Build Q with first coordinate distributed like p's last coordinate.
        auto last = [](const Outcome& x) { return x.slice(1, 2); };
        Dist shared = p.pushforward(last);
        Dist q(Kind::rational, d);
        for (auto& [x, s] : shared.weights())
            for (int b = 0; b < d; ++b)
                q.accumulate(x.concat(Outcome{b}), s * rq(1, d));
        Dist r = glue(p, q, 1);
        CHECK(r.arity() == 3);
        CHECK(r.is_normalized());
        CHECK(r.pushforward([](const Outcome& x) { return x.slice(0, 2); }) == p);
    }
}
