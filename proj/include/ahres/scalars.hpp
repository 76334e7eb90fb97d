#pragma once

#include "ahres/dd.hpp"
#include "ahres/f128.hpp"

#include <cmath>

namespace ahres {

// Bridge the double overloads into this namespace so unqualified calls in
// templates resolve for all three scalar tiers.
using std::abs;
using std::atan2;
using std::cos;
using std::exp;
using std::isfinite;
using std::ldexp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;

inline void sincos(double a, double& s, double& c) {
    s = std::sin(a);
    c = std::cos(a);
}
inline double to_double(double a) { return a; }

template <class R>
struct real_traits;

template <>
struct real_traits<double> {
    static constexpr const char* name = "double";
    static double eps() { return 2.220446049250313e-16; }
    static double pi() { return 3.141592653589793238462643383279502884; }
    static double from_double(double d) { return d; }
};

template <>
struct real_traits<dd_real> {
    static constexpr const char* name = "dd";
    static double eps() { return dd_consts::eps; }
    static dd_real pi() { return dd_consts::pi; }
    static dd_real from_double(double d) { return dd_real(d); }
};

template <>
struct real_traits<f128> {
    static constexpr const char* name = "qd";
    static double eps() { return 1.925929944387235853055977942584927319e-34; }
    static f128 pi() { return f128(M_PIq); }
    static f128 from_double(double d) { return f128(d); }
};

} // namespace ahres
