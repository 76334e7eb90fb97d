#pragma once

#include "ahres/scalars.hpp"

#include <type_traits>

namespace ahres {

// Complex numbers over any of the real tiers.  std::complex is only
// specified for float/double/long double, hence the home-grown type.
template <class R>
struct cplx {
    R re{};
    R im{};

    cplx() = default;
    cplx(R r) : re(r) {}
    cplx(R r, R i) : re(r), im(i) {}
    template <class S,
              class = std::enable_if_t<std::is_arithmetic_v<S> && !std::is_same_v<S, R>>>
    cplx(S r) : re(real_traits<R>::from_double(static_cast<double>(r))) {}
};

template <class R> cplx<R> operator+(const cplx<R>& a, const cplx<R>& b) { return {a.re + b.re, a.im + b.im}; }
template <class R> cplx<R> operator-(const cplx<R>& a, const cplx<R>& b) { return {a.re - b.re, a.im - b.im}; }
template <class R> cplx<R> operator-(const cplx<R>& a) { return {-a.re, -a.im}; }
template <class R> cplx<R> operator*(const cplx<R>& a, const cplx<R>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R> cplx<R> operator*(const R& s, const cplx<R>& a) { return {s * a.re, s * a.im}; }
template <class R> cplx<R> operator*(const cplx<R>& a, const R& s) { return {a.re * s, a.im * s}; }

// Smith's algorithm keeps intermediate magnitudes in range.
template <class R>
cplx<R> operator/(const cplx<R>& a, const cplx<R>& b) {
    if (abs(b.re) >= abs(b.im)) {
        R t = b.im / b.re;
        R d = b.re + b.im * t;
        return {(a.re + a.im * t) / d, (a.im - a.re * t) / d};
    }
    R t = b.re / b.im;
    R d = b.re * t + b.im;
    return {(a.re * t + a.im) / d, (a.im * t - a.re) / d};
}
template <class R> cplx<R> operator/(const cplx<R>& a, const R& s) { return {a.re / s, a.im / s}; }

template <class R> cplx<R>& operator+=(cplx<R>& a, const cplx<R>& b) { a = a + b; return a; }
template <class R> cplx<R>& operator-=(cplx<R>& a, const cplx<R>& b) { a = a - b; return a; }
template <class R> cplx<R>& operator*=(cplx<R>& a, const cplx<R>& b) { a = a * b; return a; }
template <class R> cplx<R>& operator/=(cplx<R>& a, const cplx<R>& b) { a = a / b; return a; }

template <class R> bool operator==(const cplx<R>& a, const cplx<R>& b) { return a.re == b.re && a.im == b.im; }
template <class R> bool operator!=(const cplx<R>& a, const cplx<R>& b) { return !(a == b); }

template <class R> cplx<R> conj(const cplx<R>& a) { return {a.re, -a.im}; }
template <class R> R norm2(const cplx<R>& a) { return a.re * a.re + a.im * a.im; }

template <class R>
R abs(const cplx<R>& a) {
    R x = abs(a.re), y = abs(a.im);
    R zero = real_traits<R>::from_double(0.0);
    if (x == zero && y == zero) return zero;
    if (x < y) { R t = x; x = y; y = t; }
    R r = y / x;
    return x * sqrt(R(1) + r * r);
}

template <class R> R arg(const cplx<R>& a) { return atan2(a.im, a.re); }

template <class R>
cplx<R> exp(const cplx<R>& a) {
    R e = exp(a.re), s, c;
    sincos(a.im, s, c);
    return {e * c, e * s};
}

template <class R> cplx<R> log(const cplx<R>& a) { return {log(abs(a)), arg(a)}; }

template <class R>
cplx<R> sqrt(const cplx<R>& a) {
    R m = abs(a);
    R zero = real_traits<R>::from_double(0.0);
    if (m == zero) return {zero, zero};
    R r = sqrt(m);
    R half = real_traits<R>::from_double(0.5);
    R th = arg(a) * half;
    R s, c;
    sincos(th, s, c);
    return {r * c, r * s};
}

// x^p for real x > 0, complex exponent: the principal branch.
template <class R>
cplx<R> pow_real(const R& x, const cplx<R>& p) {
    R lx = log(x);
    return exp(cplx<R>{p.re * lx, p.im * lx});
}

template <class R> bool isfinite(const cplx<R>& a) { return isfinite(a.re) && isfinite(a.im); }

template <class R>
cplx<R> from_std(double re, double im) {
    return {real_traits<R>::from_double(re), real_traits<R>::from_double(im)};
}

template <class R>
void to_doubles(const cplx<R>& a, double& re, double& im) {
    re = to_double(a.re);
    im = to_double(a.im);
}

using cd = cplx<double>; // the workhorse precision for interfaces

} // namespace ahres
