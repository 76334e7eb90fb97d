#pragma once

#include "ahres/poly.hpp"

namespace ahres {

// Rational function of the spectral parameter.  Canonical form invariant:
// gcd(num, den) = 1 and den is monic.  Denominator never the zero polynomial.
class RatFunc {
  public:
    RatFunc() : num_(), den_(Poly::one()) {}
    RatFunc(BigRat c) : num_(Poly(std::move(c))), den_(Poly::one()) {}
    RatFunc(int c) : RatFunc(BigRat(c)) {}
    explicit RatFunc(Poly p) : num_(std::move(p)), den_(Poly::one()) {}
    RatFunc(Poly num, Poly den) { assign(std::move(num), std::move(den)); }

    static RatFunc lambda() { return RatFunc(Poly::var()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatFunc operator-() const { RatFunc r; r.num_ = -num_; r.den_ = den_; return r; }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw ring_error("rational function division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& b) { *this = *this + b; return *this; }
    RatFunc& operator-=(const RatFunc& b) { *this = *this - b; return *this; }
    RatFunc& operator*=(const RatFunc& b) { *this = *this * b; return *this; }
    RatFunc& operator/=(const RatFunc& b) { *this = *this / b; return *this; }

    // Canonical form makes equality a pair comparison.
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    // Throws if x0 is a pole (den vanishes after reduction).
    BigRat eval(const BigRat& x0) const {
        BigRat d = den_.eval(x0);
        if (d == 0) throw ring_error("rational function evaluated at a pole");
        return num_.eval(x0) / d;
    }

    bool has_pole_at(const BigRat& x0) const { return den_.eval(x0) == 0; }
    int pole_order_at(const BigRat& x0) const {
        if (num_.is_zero()) return 0;
        return den_.root_multiplicity(x0);
    }

    std::string to_string(const std::string& v = "lambda") const {
        if (is_polynomial()) return num_.to_string(v);
        return "(" + num_.to_string(v) + ")/(" + den_.to_string(v) + ")";
    }

  private:
    void assign(Poly num, Poly den) {
        if (den.is_zero()) throw ring_error("rational function with zero denominator");
        if (num.is_zero()) {
            num_ = Poly();
            den_ = Poly::one();
            return;
        }
        Poly g = Poly::gcd(num, den);
        if (g.degree() > 0) {
            num = num / g;
            den = den / g;
        }
        BigRat l = den.lead();
        num_ = (BigRat(1) / l) * num;
        den_ = (BigRat(1) / l) * den;
    }
    Poly num_, den_;
};

// Exact coefficient of (lambda - lambda0)^(-p), p >= 1, in the Laurent
// expansion of f about lambda0.  Zero when the pole order is below p.
// Shift to t = lambda - lambda0, strip t^q from the denominator, then take
// the Taylor coefficient of t^(q-p) of the regular part by series division.
inline BigRat laurent_coeff(const RatFunc& f, const BigRat& lambda0, int p) {
    if (p < 1) throw ring_error("laurent_coeff needs p >= 1");
    if (f.is_zero()) return BigRat(0);
    Poly n = f.num().shifted(lambda0);
    Poly d = f.den().shifted(lambda0);
    // d = t^q * d1 with d1(0) != 0
    int q = 0;
    {
        std::vector<BigRat> dc = d.coeffs();
        while (q <= d.degree() && dc[q] == 0) ++q;
    }
    if (p > q) return BigRat(0);
    std::vector<BigRat> d1(d.coeffs().begin() + q, d.coeffs().end());
    int want = q - p; // Taylor order of n/d1 we need
    std::vector<BigRat> series(want + 1);
    for (int j = 0; j <= want; ++j) {
        BigRat acc = n.coeff(j);
        for (int i = 1; i <= j; ++i) {
            if (i < static_cast<int>(d1.size())) acc -= d1[i] * series[j - i];
        }
        series[j] = acc / d1[0];
    }
    return series[want];
}

} // namespace ahres
