#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace ahres {

// Double-double: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Requires IEEE doubles, round-to-nearest, and no FP contraction (the build
// sets -ffp-contract=off); error terms use std::fma.
struct dd_real {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd_real() = default;
    constexpr dd_real(double h) : hi(h), lo(0.0) {}
    constexpr dd_real(double h, double l) : hi(h), lo(l) {}
    constexpr dd_real(int v) : hi(v), lo(0.0) {}
    constexpr dd_real(long v) : hi(static_cast<double>(v)), lo(0.0) {}

    explicit operator double() const { return hi; }
};

namespace dd_detail {

inline dd_real two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}
inline dd_real quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}
inline dd_real two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

} // namespace dd_detail

inline dd_real operator+(const dd_real& a, const dd_real& b) {
    using namespace dd_detail;
    dd_real s = two_sum(a.hi, b.hi);
    dd_real t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}
inline dd_real operator+(const dd_real& a, double b) {
    using namespace dd_detail;
    dd_real s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}
inline dd_real operator+(double a, const dd_real& b) { return b + a; }

inline dd_real operator-(const dd_real& a) { return {-a.hi, -a.lo}; }
inline dd_real operator-(const dd_real& a, const dd_real& b) { return a + (-b); }
inline dd_real operator-(const dd_real& a, double b) { return a + (-b); }
inline dd_real operator-(double a, const dd_real& b) { return dd_real(a) + (-b); }

inline dd_real operator*(const dd_real& a, const dd_real& b) {
    using namespace dd_detail;
    dd_real p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}
inline dd_real operator*(const dd_real& a, double b) {
    using namespace dd_detail;
    dd_real p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}
inline dd_real operator*(double a, const dd_real& b) { return b * a; }

inline dd_real operator/(const dd_real& a, const dd_real& b) {
    using namespace dd_detail;
    double q1 = a.hi / b.hi;
    dd_real r = a - b * q1;
    double q2 = r.hi / b.hi;
    r = r - b * q2;
    double q3 = r.hi / b.hi;
    dd_real q = quick_two_sum(q1, q2);
    return q + q3;
}
inline dd_real operator/(const dd_real& a, double b) { return a / dd_real(b); }
inline dd_real operator/(double a, const dd_real& b) { return dd_real(a) / b; }

inline dd_real& operator+=(dd_real& a, const dd_real& b) { a = a + b; return a; }
inline dd_real& operator-=(dd_real& a, const dd_real& b) { a = a - b; return a; }
inline dd_real& operator*=(dd_real& a, const dd_real& b) { a = a * b; return a; }
inline dd_real& operator/=(dd_real& a, const dd_real& b) { a = a / b; return a; }

inline bool operator==(const dd_real& a, const dd_real& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const dd_real& a, const dd_real& b) { return !(a == b); }
inline bool operator<(const dd_real& a, const dd_real& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const dd_real& a, const dd_real& b) { return b < a; }
inline bool operator<=(const dd_real& a, const dd_real& b) { return !(b < a); }
inline bool operator>=(const dd_real& a, const dd_real& b) { return !(a < b); }

inline dd_real abs(const dd_real& a) { return (a.hi < 0.0) ? -a : a; }
inline bool isfinite(const dd_real& a) { return std::isfinite(a.hi); }
inline double to_double(const dd_real& a) { return a.hi; }

// Exact scaling by a power of two.
inline dd_real ldexp(const dd_real& a, int e) {
    return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)};
}

inline dd_real sqr(const dd_real& a) {
    using namespace dd_detail;
    dd_real p = two_prod(a.hi, a.hi);
    p.lo += 2.0 * a.hi * a.lo;
    return quick_two_sum(p.hi, p.lo);
}

inline dd_real sqrt(const dd_real& a) {
    // Karp: one Newton correction on the double estimate.
    if (a.hi == 0.0 && a.lo == 0.0) return dd_real(0.0);
    if (a.hi < 0.0) return dd_real(std::numeric_limits<double>::quiet_NaN());
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    dd_real err = a - sqr(dd_real(ax));
    return dd_real(ax) + err.hi * (x * 0.5);
}

namespace dd_consts {
// hi parts are the double roundings of the constants, lo the remainders.
inline constexpr dd_real pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr dd_real two_pi{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr dd_real half_pi{1.570796326794896558e+00, 6.123233995736766036e-17};
inline constexpr dd_real ln2{6.931471805599452862e-01, 2.319046813846299558e-17};
inline constexpr double eps = 4.93038065763132e-32; // 2^-104
} // namespace dd_consts

inline dd_real exp(const dd_real& a) {
    // exp(m ln2 + 512 r) = 2^m (exp(r))^512 with |r| small enough for a
    // short Taylor tail.
    if (a.hi <= -709.0) return dd_real(0.0);
    if (a.hi >= 709.0) return dd_real(std::numeric_limits<double>::infinity());
    double m = std::floor(a.hi / dd_consts::ln2.hi + 0.5);
    dd_real r = ldexp(a - dd_consts::ln2 * m, -9);
    // f = exp(r) - 1 by Taylor; |r| <= ln2/1024 ~ 6.8e-4
    dd_real f = r;
    dd_real term = r;
    for (int k = 2; k <= 12; ++k) {
        term = term * r / double(k);
        f += term;
        if (std::abs(term.hi) < 1e-40) break;
    }
    // undo the /512: (1+f) -> (1+f)^2 nine times, tracked as f -> f^2 + 2f
    for (int i = 0; i < 9; ++i) f = sqr(f) + ldexp(f, 1);
    return ldexp(f + 1.0, static_cast<int>(m));
}

inline dd_real log(const dd_real& a) {
    // Newton on exp: x <- x + a exp(-x) - 1, doubling correct digits.
    if (a.hi <= 0.0) return dd_real(std::numeric_limits<double>::quiet_NaN());
    dd_real x(std::log(a.hi));
    x = x + a * exp(-x) - 1.0;
    x = x + a * exp(-x) - 1.0;
    return x;
}

namespace dd_detail {

// Taylor on |r| <= pi/4.
inline void sincos_taylor(const dd_real& r, dd_real& s, dd_real& c) {
    dd_real r2 = sqr(r);
    s = r;
    dd_real term = r;
    for (int k = 3; k <= 31; k += 2) {
        term = term * r2 / double(k * (k - 1));
        term = -term;
        s += term;
        if (std::abs(term.hi) < 1e-40) break;
    }
    c = dd_real(1.0);
    term = dd_real(1.0);
    for (int k = 2; k <= 30; k += 2) {
        term = term * r2 / double(k * (k - 1));
        term = -term;
        c += term;
        if (std::abs(term.hi) < 1e-40) break;
    }
}

} // namespace dd_detail

inline void sincos(const dd_real& a, dd_real& s, dd_real& c) {
    // quadrant reduction; adequate for the moderate arguments used here
    double m = std::floor(a.hi / dd_consts::half_pi.hi + 0.5);
    dd_real r = a - dd_consts::half_pi * m;
    long q = static_cast<long>(m) & 3L; // two's complement makes this m mod 4
    dd_real sr, cr;
    dd_detail::sincos_taylor(r, sr, cr);
    switch (q) {
        case 0: s = sr; c = cr; break;
        case 1: s = cr; c = -sr; break;
        case 2: s = -sr; c = -cr; break;
        default: s = -cr; c = sr; break;
    }
}

inline dd_real sin(const dd_real& a) { dd_real s, c; sincos(a, s, c); return s; }
inline dd_real cos(const dd_real& a) { dd_real s, c; sincos(a, s, c); return c; }

inline dd_real atan2(const dd_real& y, const dd_real& x) {
    if (x.hi == 0.0 && x.lo == 0.0 && y.hi == 0.0 && y.lo == 0.0)
        return dd_real(0.0);
    // Newton against sin/cos starting from the double estimate:
    // theta <- theta + (y cos - x sin) / (x cos + y sin) on the normalized pair.
    dd_real r = sqrt(sqr(x) + sqr(y));
    dd_real xn = x / r, yn = y / r;
    dd_real th(std::atan2(y.hi, x.hi));
    for (int i = 0; i < 2; ++i) {
        dd_real s, c;
        sincos(th, s, c);
        th = th + (yn * c - xn * s) / (xn * c + yn * s);
    }
    return th;
}

inline dd_real pow(const dd_real& a, int e) {
    if (e == 0) return dd_real(1.0);
    bool inv = e < 0;
    unsigned long k = inv ? -static_cast<long>(e) : e;
    dd_real base = a, acc(1.0);
    while (k) {
        if (k & 1UL) acc *= base;
        base = sqr(base);
        k >>= 1;
    }
    return inv ? dd_real(1.0) / acc : acc;
}

} // namespace ahres
