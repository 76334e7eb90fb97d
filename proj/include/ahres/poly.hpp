#pragma once

#include "ahres/rational.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace ahres {

// Dense univariate polynomial over BigRat, one indeterminate (we use it for
// the spectral parameter lambda).  Coefficient vector never has a trailing
// zero; the zero polynomial is the empty vector with degree() == -1.
class Poly {
  public:
    Poly() = default;
    explicit Poly(BigRat c) { if (c != 0) c_.push_back(std::move(c)); }
    explicit Poly(std::vector<BigRat> c) : c_(std::move(c)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(BigRat(1)); }
    // The indeterminate itself.
    static Poly var() { return Poly(std::vector<BigRat>{BigRat(0), BigRat(1)}); }
    // c * lambda^k
    static Poly monomial(BigRat c, int k) {
        if (c == 0) return Poly();
        std::vector<BigRat> v(k + 1);
        v[k] = std::move(c);
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const BigRat& lead() const {
        if (c_.empty()) throw ring_error("lead of zero polynomial");
        return c_.back();
    }
    BigRat coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return BigRat(0);
        return c_[k];
    }
    const std::vector<BigRat>& coeffs() const { return c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<BigRat> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < a.c_.size()) r[i] += a.c_[i];
            if (i < b.c_.size()) r[i] += b.c_[i];
        }
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<BigRat> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) {
            if (i < a.c_.size()) r[i] += a.c_[i];
            if (i < b.c_.size()) r[i] -= b.c_[i];
        }
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<BigRat> r(c_);
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<BigRat> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const BigRat& s, const Poly& a) {
        if (s == 0) return Poly();
        std::vector<BigRat> r(a.c_);
        for (auto& x : r) x *= s;
        return Poly(std::move(r));
    }
    Poly& operator+=(const Poly& b) { *this = *this + b; return *this; }
    Poly& operator-=(const Poly& b) { *this = *this - b; return *this; }
    Poly& operator*=(const Poly& b) { *this = *this * b; return *this; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Euclidean division by any nonzero divisor (field coefficients).
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw ring_error("polynomial division by zero");
        Poly q, r = a;
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int k = r.degree() - b.degree();
            BigRat f = r.lead() / b.lead();
            Poly t = Poly::monomial(f, k);
            q += t;
            r -= t * b;
        }
        return {q, r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
    bool divides(const Poly& a) const { return divmod(a, *this).second.is_zero(); }

    Poly monic() const {
        if (is_zero()) return Poly();
        return (BigRat(1) / lead()) * (*this);
    }

    // Monic Euclidean gcd; gcd(0,0) = 0.
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = r.monic(); // keeps intermediate coefficients small
        }
        return a.monic();
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<BigRat> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = BigRat(i) * c_[i];
        return Poly(std::move(r));
    }

    BigRat eval(const BigRat& x) const {
        BigRat acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // Composition with a shift: p(x0 + t) as a polynomial in t.
    Poly shifted(const BigRat& x0) const {
        Poly acc;
        Poly lin(std::vector<BigRat>{x0, BigRat(1)});
        for (size_t i = c_.size(); i-- > 0;) acc = acc * lin + Poly(c_[i]);
        return acc;
    }

    // Multiplicity of root x0.
    int root_multiplicity(const BigRat& x0) const {
        if (is_zero()) throw ring_error("root multiplicity of zero polynomial");
        Poly lin(std::vector<BigRat>{-x0, BigRat(1)});
        Poly p = *this;
        int m = 0;
        while (true) {
            auto [q, r] = divmod(p, lin);
            if (!r.is_zero()) return m;
            p = std::move(q);
            ++m;
        }
    }

    std::string to_string(const std::string& v = "lambda") const;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<BigRat> c_;
};

inline std::string Poly::to_string(const std::string& v) const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
        BigRat ck = coeff(k);
        if (ck == 0) continue;
        if (!s.empty()) {
            s += (ck > 0) ? " + " : " - ";
            if (ck < 0) ck = -ck;
        } else if (ck < 0) {
            s += "-";
            ck = -ck;
        }
        bool unit = (ck == 1) && k > 0;
        if (!unit) s += rational_to_string(ck);
        if (k > 0) {
            if (!unit) s += "*";
            s += v;
            if (k > 1) s += "^" + std::to_string(k);
        }
    }
    return s;
}

} // namespace ahres
