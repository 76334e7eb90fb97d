#pragma once

#include "ahres/numeric_errors.hpp"
#include "ahres/scalars.hpp"

#include <algorithm>
#include <vector>

namespace ahres {

// Rotationally symmetric warped profile on the punctured ball coordinate
// 0 < x < 2:
//   d(x) = (1 - x^2/4)^2 + c * chi(x) * x^(2k+1)
// with chi a fixed smooth step, chi == 1 on (0, 1/2], chi == 0 on [1, 2).
// c = 0 is the constant-curvature model exactly.
struct RadialProfile {
    int n = 2;      // boundary dimension; the space itself has dimension n+1
    int k = 0;      // perturbation order
    double c = 0.0; // perturbation amplitude
};

namespace profile_detail {

// eta(t) = exp(-1/t) for t > 0, extended by 0.
template <class R>
R eta(const R& t) {
    if (!(t > R(0))) return R(0);
    return exp(-(R(1) / t));
}

// smooth step: 0 for s <= 0, 1 for s >= 1
template <class R>
void step(const R& s, R& sigma, R& dsigma) {
    if (!(s > R(0))) { sigma = R(0); dsigma = R(0); return; }
    if (!(s < R(1))) { sigma = R(1); dsigma = R(0); return; }
    R e0 = eta(s), e1 = eta(R(1) - s);
    R den = e0 + e1;
    sigma = e0 / den;
    // eta'(t) = eta(t)/t^2
    R d0 = e0 / (s * s);
    R d1 = e1 / ((R(1) - s) * (R(1) - s));
    dsigma = (d0 * e1 + e0 * d1) / (den * den);
}

} // namespace profile_detail

template <class R>
struct ProfileVal {
    R d;
    R dp; // d'(x)
};

// chi(x) = step(2(1-x)); chi' = -2 step'.
template <class R>
void profile_cutoff(const R& x, R& chi, R& dchi) {
    R s = R(2) * (R(1) - x);
    R sg, dsg;
    profile_detail::step(s, sg, dsg);
    chi = sg;
    dchi = R(-2) * dsg;
}

template <class R>
ProfileVal<R> profile_eval(const RadialProfile& p, const R& x) {
    if (!(x > R(0)) || !(x < R(2)))
        throw domain_error("profile evaluated outside (0, 2)");
    // factored form: near x = 2 the difference 2 - x is exact, while
    // 1 - x^2/4 would cancel away low-order digits
    R u = (R(2) - x) * (R(2) + x) / R(4);
    R d = u * u;
    R dp = -x * u;
    if (p.c != 0.0) {
        R chi, dchi;
        profile_cutoff(x, chi, dchi);
        if (!(chi == R(0))) {
            R xp = pow(x, 2 * p.k + 1);
            R c = real_traits<R>::from_double(p.c);
            d += c * chi * xp;
            dp += c * (dchi * xp + R(2 * p.k + 1) * chi * pow(x, 2 * p.k));
        }
    }
    return {d, dp};
}

// Coefficients of d as a polynomial, valid on (0, 1/2] where chi == 1.
// Shared by both Frobenius expansions' inner window.
inline std::vector<double> profile_poly(const RadialProfile& p) {
    int deg = std::max(4, 2 * p.k + 1);
    std::vector<double> c(deg + 1, 0.0);
    c[0] = 1.0;
    c[2] = -0.5;
    c[4] = 0.0625;
    c[2 * p.k + 1] += p.c;
    return c;
}

} // namespace ahres
