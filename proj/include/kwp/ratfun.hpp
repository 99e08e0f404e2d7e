#pragma once
// Rational functions in two variables, kept in canonical form at all times:
// gcd(num, den) = 1 and the denominator has leading coefficient 1 in the
// graded order.  Equality of canonical forms is plain structural equality,
// which is what all identity checks in the toolkit reduce to.

#include <stdexcept>
#include <string>

#include "kwp/bipoly.hpp"

namespace kwp {

class RatFun2 {
public:
    RatFun2() : num_(), den_(BiPoly::constant(1)) {}
    RatFun2(const Rat& v) : num_(BiPoly::constant(v)), den_(BiPoly::constant(1)) {}
    RatFun2(const BiPoly& p) : num_(p), den_(BiPoly::constant(1)) {}
    RatFun2(BiPoly num, BiPoly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

    const BiPoly& num() const { return num_; }
    const BiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_ == BiPoly::constant(1); }

    // Throws unless the denominator is trivial.
    const BiPoly& as_polynomial() const {
        if (!is_polynomial())
            throw std::domain_error("rational function is not a polynomial: " + str());
        return num_;
    }

    RatFun2 operator-() const {
        RatFun2 r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RatFun2 operator+(const RatFun2& o) const {
        return RatFun2(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFun2 operator-(const RatFun2& o) const {
        return RatFun2(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RatFun2 operator*(const RatFun2& o) const { return RatFun2(num_ * o.num_, den_ * o.den_); }
    RatFun2 operator/(const RatFun2& o) const {
        if (o.is_zero()) throw std::domain_error("division by zero rational function");
        return RatFun2(num_ * o.den_, den_ * o.num_);
    }
    bool operator==(const RatFun2& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFun2& o) const { return !(*this == o); }

    // Quotient rule; var: 0 for x, 1 for y.
    RatFun2 partial(int var) const {
        return RatFun2(num_.partial(var) * den_ - num_ * den_.partial(var), den_ * den_);
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        std::string n = num_.str(), d = den_.str();
        auto wrap = [](const std::string& s) {
            return s.find(' ') != std::string::npos ? "(" + s + ")" : s;
        };
        return wrap(n) + " / " + wrap(d);
    }

private:
    void canonicalize() {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (num_.is_zero()) {
            den_ = BiPoly::constant(1);
            return;
        }
        BiPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = *divide_exact(num_, g);
            den_ = *divide_exact(den_, g);
        }
        Rat lc = den_.leading_coeff();
        if (lc != 1) {
            Rat inv = Rat(1) / lc;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    BiPoly num_, den_;
};

struct Vec2RF {
    RatFun2 a, b;
};

struct Mat2RF {
    // Row-major 2x2.
    RatFun2 m[2][2];

    static Mat2RF identity() {
        Mat2RF s;
        s.m[0][0] = RatFun2(Rat(1));
        s.m[1][1] = RatFun2(Rat(1));
        return s;
    }

    Vec2RF operator*(const Vec2RF& v) const {
        return {m[0][0] * v.a + m[0][1] * v.b, m[1][0] * v.a + m[1][1] * v.b};
    }
    Mat2RF operator*(const Mat2RF& o) const {
        Mat2RF r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }
    RatFun2 det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
};

inline bool mat_is_symmetric(const Mat2RF& a) { return a.m[0][1] == a.m[1][0]; }

// Divergence of a vector field with rational-function entries.
inline RatFun2 divergence(const Vec2RF& v) { return v.a.partial(0) + v.b.partial(1); }

// Column-wise divergence of a matrix field: entry j is div(column j).
inline Vec2RF divergence_columns(const Mat2RF& a) {
    return {a.m[0][0].partial(0) + a.m[1][0].partial(1), a.m[0][1].partial(0) + a.m[1][1].partial(1)};
}

}  // namespace kwp
