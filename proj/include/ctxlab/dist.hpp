#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "ctxlab/scalar.hpp"

namespace ctxlab {

// A point of Z_d^k for small k. Length and entries are fixed at construction;
// entries are reduced mod d by the callers that know d.
class Outcome {
  public:
    static constexpr int max_arity = 8;

    Outcome() : len_(0), v_{} {}
    Outcome(std::initializer_list<int> xs) : Outcome(std::vector<int>(xs)) {}
    explicit Outcome(const std::vector<int>& xs) : len_(0), v_{} {
        if (xs.size() > max_arity) throw err_arity("outcome arity exceeds " + std::to_string(max_arity));
        for (int x : xs) v_[len_++] = static_cast<uint8_t>(x);
    }

    int arity() const { return len_; }
    int operator[](int i) const { return v_[i]; }

    std::vector<int> to_vector() const { return {v_.begin(), v_.begin() + len_}; }

    Outcome slice(int from, int to) const {
        Outcome r;
        for (int i = from; i < to; ++i) r.v_[r.len_++] = v_[i];
        return r;
    }
    Outcome concat(const Outcome& o) const {
        if (len_ + o.len_ > max_arity) throw err_arity("outcome arity exceeds limit in concat");
        Outcome r = *this;
        for (int i = 0; i < o.len_; ++i) r.v_[r.len_++] = o.v_[i];
        return r;
    }

    bool operator==(const Outcome& o) const { return len_ == o.len_ && v_ == o.v_; }
    bool operator<(const Outcome& o) const {
        if (len_ != o.len_) return len_ < o.len_;
        return v_ < o.v_;
    }

  private:
    uint8_t len_;
    std::array<uint8_t, max_arity> v_;
};

// Finite-support distribution on Z_d^k with values in one of the two
// semirings. Invariants: weights are nonzero, sorted by outcome, share one
// arity; the total is 1 (rational) or has at least one nonzero weight
// (boolean), except where an operation documents a sub-normalized
// intermediate. Value semantics throughout; operations return fresh objects.
class Dist {
  public:
    using Weights = std::vector<std::pair<Outcome, Scalar>>;

    Dist(Kind kind, int d) : kind_(kind), d_(d) {}

    static Dist delta(Kind kind, int d, const Outcome& x) {
        Dist p(kind, d);
        p.w_.emplace_back(x, Scalar::one(kind));
        return p;
    }

    // Uniform distribution on Z_d^arity: 1/d^arity everywhere (rational) or
    // all-ones (boolean).
    static Dist uniform(Kind kind, int d, int arity) {
        Dist p(kind, d);
        long total = 1;
        for (int i = 0; i < arity; ++i) total *= d;
        std::vector<int> x(arity, 0);
        for (long n = 0; n < total; ++n) {
            p.w_.emplace_back(Outcome(x), kind == Kind::boolean
                                              ? Scalar::boolean(true)
                                              : Scalar::one(Kind::rational).div(Scalar::rational(total, 1)));
            for (int i = arity - 1; i >= 0; --i) {
                if (++x[i] < d) break;
                x[i] = 0;
            }
        }
        return p;
    }

    static Dist from_weights(Kind kind, int d, Weights w) {
        Dist p(kind, d);
        for (auto& [x, s] : w) p.accumulate(x, s);
        p.validate();
        return p;
    }

    Kind kind() const { return kind_; }
    int d() const { return d_; }
    bool empty() const { return w_.empty(); }
    int arity() const { return w_.empty() ? 0 : w_.front().first.arity(); }
    const Weights& weights() const { return w_; }

    Scalar at(const Outcome& x) const {
        auto it = lower_bound(x);
        if (it != w_.end() && it->first == x) return it->second;
        return Scalar::zero(kind_);
    }

    // Adds s to the weight at x, keeping the sorted nonzero representation.
    void accumulate(const Outcome& x, const Scalar& s) {
        if (s.is_zero()) return;
        if (s.kind() != kind_) throw err_semiring("weight kind does not match distribution kind");
        auto it = lower_bound(x);
        if (it != w_.end() && it->first == x) {
            it->second += s;
        } else {
            w_.insert(it, {x, s});
        }
    }

    Scalar total() const {
        Scalar t = Scalar::zero(kind_);
        for (auto& [x, s] : w_) t += s;
        return t;
    }

    bool is_normalized() const { return total().is_one(); }

    bool is_delta() const { return w_.size() == 1 && w_.front().second.is_one(); }

    void validate() const {
        for (auto& [x, s] : w_) {
            if (x.arity() != arity()) throw err_arity("mixed outcome arities in one distribution");
            for (int i = 0; i < x.arity(); ++i)
                if (x[i] >= d_) throw err_arity("outcome entry not in Z_" + std::to_string(d_));
        }
        if (!is_normalized()) throw err_margin("distribution does not normalize to one");
    }

    Dist pushforward(const std::function<Outcome(const Outcome&)>& f) const {
        Dist q(kind_, d_);
        for (auto& [x, s] : w_) q.accumulate(f(x), s);
        return q;
    }

    // Convolution over the group Z_d^arity, componentwise addition mod d.
    Dist convolve(const Dist& o) const {
        if (kind_ != o.kind_) throw err_semiring("convolve across semirings");
        if (d_ != o.d_ || arity() != o.arity()) throw err_arity("convolve requires one outcome group");
        Dist q(kind_, d_);
        for (auto& [x, s] : w_) {
            for (auto& [y, t] : o.w_) {
                std::vector<int> z(x.arity());
                for (int i = 0; i < x.arity(); ++i) z[i] = (x[i] + y[i]) % d_;
                q.accumulate(Outcome(z), s * t);
            }
        }
        return q;
    }

    Dist boolean_projection() const {
        Dist q(Kind::boolean, d_);
        for (auto& [x, s] : w_) q.accumulate(x, s.boolean_projection());
        return q;
    }

    bool operator==(const Dist& o) const {
        return kind_ == o.kind_ && d_ == o.d_ && w_ == o.w_;
    }
    bool operator!=(const Dist& o) const { return !(*this == o); }

  private:
    Weights::iterator lower_bound(const Outcome& x) {
        return std::lower_bound(w_.begin(), w_.end(), x,
                                [](const auto& p, const Outcome& y) { return p.first < y; });
    }
    Weights::const_iterator lower_bound(const Outcome& x) const {
        return std::lower_bound(w_.begin(), w_.end(), x,
                                [](const auto& p, const Outcome& y) { return p.first < y; });
    }

    Kind kind_;
    int d_;
    Weights w_;
};

// The degree-n section of the decalage augmentation: T(p)(m1,...,m_{n+1}) =
// p(m2,...,m_{n+1}) / d. Splits a distribution on Z_d^n uniformly over the
// extra first coordinate; dropping that coordinate recovers p, and T
// intertwines convolution.
Dist section_tuple(const Dist& p);

// Pushforward along the augmentation: drop the first coordinate.
Dist drop_first(const Dist& p);

// The gluing section: P on tuples of arity a, Q on tuples of arity b, whose
// overlap (last k of P, first k of Q) has equal pushforwards. Returns the
// distribution on arity a+b-k with weight P(x)Q(y)/marg(shared) on matching
// pairs, zero where the shared marginal vanishes.
Dist glue(const Dist& P, const Dist& Q, int overlap);

}  // namespace ctxlab
