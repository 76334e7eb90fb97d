#pragma once

#include <quadmath.h>

#include <string>

namespace ahres {

// IEEE binary128 behind a value type so templates can overload on it.
// The CLI calls the tier "qd"; eps is FLT128_EPSILON ~ 1.9e-34.
struct f128 {
    __float128 v = 0;

    constexpr f128() = default;
    constexpr f128(double d) : v(d) {}
    constexpr f128(int i) : v(i) {}
    constexpr f128(long i) : v(i) {}
    constexpr f128(__float128 x) : v(x) {}

    explicit operator double() const { return static_cast<double>(v); }
};

inline f128 operator+(f128 a, f128 b) { return {a.v + b.v}; }
inline f128 operator-(f128 a, f128 b) { return {a.v - b.v}; }
inline f128 operator*(f128 a, f128 b) { return {a.v * b.v}; }
inline f128 operator/(f128 a, f128 b) { return {a.v / b.v}; }
inline f128 operator-(f128 a) { return {-a.v}; }
inline f128& operator+=(f128& a, f128 b) { a.v += b.v; return a; }
inline f128& operator-=(f128& a, f128 b) { a.v -= b.v; return a; }
inline f128& operator*=(f128& a, f128 b) { a.v *= b.v; return a; }
inline f128& operator/=(f128& a, f128 b) { a.v /= b.v; return a; }

inline bool operator==(f128 a, f128 b) { return a.v == b.v; }
inline bool operator!=(f128 a, f128 b) { return a.v != b.v; }
inline bool operator<(f128 a, f128 b) { return a.v < b.v; }
inline bool operator>(f128 a, f128 b) { return a.v > b.v; }
inline bool operator<=(f128 a, f128 b) { return a.v <= b.v; }
inline bool operator>=(f128 a, f128 b) { return a.v >= b.v; }

inline f128 abs(f128 a) { return {fabsq(a.v)}; }
inline f128 sqrt(f128 a) { return {sqrtq(a.v)}; }
inline f128 exp(f128 a) { return {expq(a.v)}; }
inline f128 log(f128 a) { return {logq(a.v)}; }
inline f128 sin(f128 a) { return {sinq(a.v)}; }
inline f128 cos(f128 a) { return {cosq(a.v)}; }
inline void sincos(f128 a, f128& s, f128& c) { s = sin(a); c = cos(a); }
inline f128 atan2(f128 y, f128 x) { return {atan2q(y.v, x.v)}; }
inline f128 ldexp(f128 a, int e) { return {ldexpq(a.v, e)}; }
inline bool isfinite(f128 a) { return finiteq(a.v) != 0; }
inline double to_double(f128 a) { return static_cast<double>(a.v); }
inline f128 pow(f128 a, int e) { return {powq(a.v, __float128(e))}; }

inline std::string to_string(f128 a) {
    char buf[64];
    quadmath_snprintf(buf, sizeof buf, "%.36Qg", a.v);
    return buf;
}

} // namespace ahres
