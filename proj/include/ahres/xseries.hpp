#pragma once

#include "ahres/rational.hpp"

#include <algorithm>
#include <vector>

namespace ahres {

// Truncated power series in the boundary defining variable x, coefficients in
// an arbitrary commutative ring C.  A series of order M is known modulo
// O(x^{M+1}) and stores exactly M+1 coefficients.  Arithmetic propagates the
// minimum order of the operands; derivative drops the order by one;
// multiplying by x^j raises it by j.
template <class C>
class XSeries {
  public:
    XSeries() : c_(1), order_(0) {}
    explicit XSeries(int order) : c_(order + 1), order_(order) {
        if (order < 0) throw ring_error("series order must be >= 0");
    }
    XSeries(std::vector<C> coeffs, int order) : c_(std::move(coeffs)), order_(order) {
        if (order < 0) throw ring_error("series order must be >= 0");
        c_.resize(order + 1);
    }

    static XSeries constant(C v, int order) {
        XSeries s(order);
        s.c_[0] = std::move(v);
        return s;
    }

    int order() const { return order_; }
    const C& coeff(int j) const {
        if (j < 0 || j > order_) throw ring_error("series coefficient outside truncation order");
        return c_[j];
    }
    C& coeff(int j) {
        if (j < 0 || j > order_) throw ring_error("series coefficient outside truncation order");
        return c_[j];
    }
    const std::vector<C>& coeffs() const { return c_; }

    XSeries truncated(int m) const {
        if (m > order_) throw ring_error("cannot raise truncation order without data");
        return XSeries(std::vector<C>(c_.begin(), c_.begin() + m + 1), m);
    }

    friend XSeries operator+(const XSeries& a, const XSeries& b) {
        int m = std::min(a.order_, b.order_);
        XSeries r(m);
        for (int j = 0; j <= m; ++j) r.c_[j] = a.c_[j] + b.c_[j];
        return r;
    }
    friend XSeries operator-(const XSeries& a, const XSeries& b) {
        int m = std::min(a.order_, b.order_);
        XSeries r(m);
        for (int j = 0; j <= m; ++j) r.c_[j] = a.c_[j] - b.c_[j];
        return r;
    }
    XSeries operator-() const {
        XSeries r(order_);
        for (int j = 0; j <= order_; ++j) r.c_[j] = -c_[j];
        return r;
    }
    friend XSeries operator*(const XSeries& a, const XSeries& b) {
        int m = std::min(a.order_, b.order_);
        XSeries r(m);
        for (int i = 0; i <= m; ++i) {
            if (i > a.order_) break;
            for (int j = 0; i + j <= m; ++j) {
                if (j > b.order_) break;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    friend XSeries operator*(const C& s, const XSeries& a) {
        XSeries r(a.order_);
        for (int j = 0; j <= a.order_; ++j) r.c_[j] = s * a.c_[j];
        return r;
    }
    XSeries& operator+=(const XSeries& b) { *this = *this + b; return *this; }
    XSeries& operator-=(const XSeries& b) { *this = *this - b; return *this; }

    // d/dx, known one order lower.
    XSeries derivative() const {
        if (order_ == 0) throw ring_error("derivative exhausts truncation order");
        XSeries r(order_ - 1);
        for (int j = 1; j <= order_; ++j) r.c_[j - 1] = C(j) * c_[j];
        return r;
    }

    // x d/dx keeps the order: coefficient j maps to j*c_j.
    XSeries x_derivative() const {
        XSeries r(order_);
        for (int j = 1; j <= order_; ++j) r.c_[j] = C(j) * c_[j];
        return r;
    }

    // Multiplication by x^j.
    XSeries shifted_up(int j) const {
        if (j < 0) throw ring_error("negative series shift");
        XSeries r(order_ + j);
        for (int i = 0; i <= order_; ++i) r.c_[i + j] = c_[i];
        return r;
    }

    // Multiplicative inverse; requires invertible constant term.
    XSeries reciprocal() const {
        if (c_[0] == C(0)) throw ring_error("series reciprocal needs invertible constant term");
        XSeries r(order_);
        r.c_[0] = C(1) / c_[0];
        for (int j = 1; j <= order_; ++j) {
            C acc{};
            for (int i = 1; i <= j; ++i) acc += c_[i] * r.c_[j - i];
            r.c_[j] = -acc / c_[0];
        }
        return r;
    }

    friend bool operator==(const XSeries& a, const XSeries& b) {
        return a.order_ == b.order_ && a.c_ == b.c_;
    }
    friend bool operator!=(const XSeries& a, const XSeries& b) { return !(a == b); }

  private:
    std::vector<C> c_;
    int order_ = 0;
};

using RatSeries = XSeries<BigRat>;

} // namespace ahres
