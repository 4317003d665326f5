#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "ctxlab/errors.hpp"

namespace ctxlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

enum class Kind { rational, boolean };

inline const char* kind_name(Kind k) { return k == Kind::rational ? "rational" : "boolean"; }

// Scalar ranges over one of two zero-sum-free semirings: the non-negative
// rationals (exact, arbitrary precision) or the Boolean algebra {0,1} with
// (OR, AND). Values are canonical: BigRat keeps lowest terms, booleans are 0/1.
// Addition of nonzeros never yields zero in either semiring; several support
// arguments rely on that.
class Scalar {
  public:
    Scalar() : kind_(Kind::rational), q_(0) {}

    static Scalar zero(Kind k) { return Scalar(k, 0); }
    static Scalar one(Kind k) { return Scalar(k, 1); }

    static Scalar rational(const BigRat& q) {
        if (q < 0) throw PreconditionError("NegativeScalar", "rational scalars are non-negative");
        return Scalar(Kind::rational, q);
    }
    static Scalar rational(long num, long den) {
        if (den <= 0) throw ParseError("rational denominator must be positive");
        return rational(BigRat(num, den));
    }
    static Scalar boolean(bool b) { return Scalar(Kind::boolean, b ? 1 : 0); }

    Kind kind() const { return kind_; }
    bool is_zero() const { return q_ == 0; }
    bool is_one() const { return q_ == 1; }
    const BigRat& value() const { return q_; }

    Scalar operator+(const Scalar& o) const {
        check_kind(o);
        if (kind_ == Kind::boolean) return boolean(!is_zero() || !o.is_zero());
        return Scalar(kind_, q_ + o.q_);
    }
    Scalar operator*(const Scalar& o) const {
        check_kind(o);
        if (kind_ == Kind::boolean) return boolean(!is_zero() && !o.is_zero());
        return Scalar(kind_, q_ * o.q_);
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // Division by a nonzero scalar; on the Boolean side the only nonzero
    // divisor is 1, so division is the identity.
    Scalar div(const Scalar& o) const {
        check_kind(o);
        if (o.is_zero()) throw PreconditionError("DivideByZero", "scalar division by zero");
        if (kind_ == Kind::boolean) return *this;
        return Scalar(kind_, q_ / o.q_);
    }

    bool operator==(const Scalar& o) const { return kind_ == o.kind_ && q_ == o.q_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    bool operator<(const Scalar& o) const {
        if (kind_ != o.kind_) return kind_ < o.kind_;
        return q_ < o.q_;
    }

    // Semiring homomorphism onto {0,1}: positive weights to 1.
    Scalar boolean_projection() const { return boolean(!is_zero()); }

    // Canonical text form: booleans as "0"/"1", rationals always as "num/den".
    std::string to_string() const {
        if (kind_ == Kind::boolean) return is_zero() ? "0" : "1";
        return numerator(q_).str() + "/" + denominator(q_).str();
    }

    static Scalar parse_rational(const std::string& s) {
        auto slash = s.find('/');
        if (s.empty() || slash == 0 || slash == s.size() - 1)
            throw ParseError("malformed rational: " + s);
        try {
            if (slash == std::string::npos) return rational(BigRat(BigInt(s)));
            BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
            if (den <= 0) throw ParseError("rational denominator must be positive: " + s);
            return rational(BigRat(num, den));
        } catch (const std::runtime_error&) {
            throw ParseError("malformed rational: " + s);
        }
    }

  private:
    Scalar(Kind k, BigRat q) : kind_(k), q_(std::move(q)) {}
    void check_kind(const Scalar& o) const {
        if (kind_ != o.kind_)
            throw err_semiring("mixed rational/boolean arithmetic");
    }

    Kind kind_;
    BigRat q_;
};

}  // namespace ctxlab
