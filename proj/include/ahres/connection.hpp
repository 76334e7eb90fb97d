#pragma once

#include "ahres/dd.hpp"
#include "ahres/f128.hpp"
#include "ahres/frobenius.hpp"
#include "ahres/odeint.hpp"
#include "ahres/profile.hpp"

#include <string>

namespace ahres {

enum class Precision { automatic, d64, dd, qd };

inline const char* precision_name(Precision p) {
    switch (p) {
        case Precision::d64: return "double";
        case Precision::dd: return "dd";
        case Precision::qd: return "qd";
        default: return "auto";
    }
}

inline Precision parse_precision(const std::string& s) {
    if (s == "double") return Precision::d64;
    if (s == "dd") return Precision::dd;
    if (s == "qd") return Precision::qd;
    if (s == "auto") return Precision::automatic;
    throw domain_error("unknown precision tier: " + s);
}

struct ConnTols {
    double x0 = 0.2;           // match point, must stay in the polynomial window
    double delta = 1e-3;       // offset of the integration start from the center
    int center_order = 40;
    int boundary_order[3] = {90, 130, 160};      // per tier
    double ode_rtol[3] = {1e-13, 5e-19, 1e-23};  // per tier
    double lattice_guard = 1e-3;
    double wronskian_tol = 1e-10;
    double cond_tol = 1e-8;      // escalate when condition * eps exceeds this
    double resonance_tol = 1e-12;
    long max_steps = 2000000;
};

// Connection data of the center-regular solution u_c against the two
// boundary Frobenius branches at the match point:
//   u_c = A * u_{n-lambda} + B * u_lambda,   S = B / A.
struct ConnectionData {
    cd A{}, B{}, S{};
    double wronskian_defect = 0.0;    // relative drift of the scaled Wronskian
    double condition_estimate = 1.0;  // relative-error amplification of (A, B)
    std::string precision_used = "double";
    OdeStats stats{};
};

namespace conn_detail {

template <class R>
ConnectionData run_tier(const RadialProfile& p, const ModeParams& mp, const cd& lambda,
                        const ConnTols& t, int tier, const char* tier_name) {
    using C = cplx<R>;
    if (!(t.x0 > 0.0) || t.x0 > 0.5)
        throw domain_error("match point must lie in (0, 1/2]");
    // the boundary recursion guards every nonzero lattice integer; the
    // coincident-branch point 2 lambda = n needs its own keep-out
    if (abs(cd(2.0) * lambda - cd(double(mp.n))) <= t.lattice_guard)
        throw indicial_collision("spectral parameter within lattice guard");

    const int n = mp.n;
    const long v = mp.v();
    C lam(real_traits<R>::from_double(lambda.re), real_traits<R>::from_double(lambda.im));
    C s = lam * (C(R(n)) - lam);

    FrobSeries<R> inc = frobenius_boundary(p, mp, lam, BoundaryBranch::incoming,
                                           t.boundary_order[tier], t.lattice_guard);
    FrobSeries<R> out = frobenius_boundary(p, mp, lam, BoundaryBranch::outgoing,
                                           t.boundary_order[tier], t.lattice_guard);
    CenterSeries<R> cs = frobenius_center(mp, lam, t.center_order);

    const R t0 = real_traits<R>::from_double(t.delta);
    const R x_start = R(2) - t0;
    const R x_end = real_traits<R>::from_double(t.x0);
    CenterStart<R> st = center_start(cs, t0);

    OdeState<R> y;
    y.y = {st.u, st.ux, C{}, C(R(1))};

    auto rhs = [&](const R& x, const std::array<C, 4>& w, std::array<C, 4>& f) {
        ProfileVal<R> pv = profile_eval(p, x);
        R cu = (R(n - 1) * pv.d - R(n) * x * pv.dp / R(2)) / (pv.d * x);
        C cq = (C(R(v) * x * x) - s * C(pv.d)) / C(pv.d * x * x);
        f[0] = w[1];
        f[1] = cu * w[1] + cq * w[0];
        f[2] = w[3];
        f[3] = cu * w[3] + cq * w[2];
    };

    // The Wronskian of two solutions obeys W' = [(n-1)/x - (n/2) d'/d] W, so
    // W x^{1-n} d^{n/2} is constant along exact solutions; its relative
    // drift is the accuracy monitor of the integration.  Because the center
    // solution grows exponentially relative to any companion's independent
    // content, the raw product W eventually cancels catastrophically; the
    // monitor therefore replaces the companion with a freshly orthogonal one
    // (which leaves the exact invariant piecewise constant) whenever the
    // cancellation in W approaches the tier's measurement floor, and reports
    // the worst drift seen over any window.
    auto layer_factor = [&](const R& x) -> R {
        ProfileVal<R> pv = profile_eval(p, x);
        return exp(R(1 - n) * log(x) + R(n) * log(pv.d) / R(2));
    };
    auto reseed = [](std::array<C, 4>& w) -> R {
        R s = sqrt(norm2(w[0]) + norm2(w[1]));
        w[2] = -conj(w[1]) / s;
        w[3] = conj(w[0]) / s;
        return s; // = W(u1, u2) by construction, real and positive
    };

    const R tiny = real_traits<R>::from_double(1e-300);
    static const double reseed_thresh[3] = {1e4, 1e16, 1e18};
    const R kappa_max = real_traits<R>::from_double(reseed_thresh[tier]);

    C w_ref = C(reseed(y.y)) * layer_factor(x_start);
    R drift{};
    auto on_accept = [&](const R& x, std::array<C, 4>& w) -> bool {
        C p03 = w[0] * w[3], p12 = w[1] * w[2];
        C wraw = p03 - p12;
        R lf = layer_factor(x);
        R dev = abs(wraw * lf - w_ref) / (abs(w_ref) + tiny);
        if (dev > drift) drift = dev;
        R cancel = (abs(p03) + abs(p12)) / (abs(wraw) + tiny);
        if (cancel > kappa_max) {
            w_ref = C(reseed(w)) * lf;
            return true;
        }
        return false;
    };

    OdeStats stats = integrate_pair(rhs, x_start, x_end, y, t.ode_rtol[tier], on_accept,
                                    t.max_steps);

    FrobEval<R> iv = frobenius_eval(inc, x_end);
    FrobEval<R> ov = frobenius_eval(out, x_end);

    C det = iv.u * ov.up - iv.up * ov.u;
    C nA = y.y[0] * ov.up - y.y[1] * ov.u;
    C nB = iv.u * y.y[1] - iv.up * y.y[0];
    C A = nA / det;
    C B = nB / det;

    // cancellation metrics of the Cramer solve
    R abs_nA = abs(y.y[0] * ov.up) + abs(y.y[1] * ov.u);
    R abs_nB = abs(iv.u * y.y[1]) + abs(iv.up * y.y[0]);
    R abs_det = abs(iv.u * ov.up) + abs(iv.up * ov.u);
    R cancel_det = abs_det / (abs(det) + tiny);
    R cancel_num = (abs_nA + abs_nB) / (abs(nA) + abs(nB) + tiny);
    R growth = iv.growth > ov.growth ? iv.growth : ov.growth;

    ConnectionData r;
    r.A = cd(to_double(A.re), to_double(A.im));
    r.B = cd(to_double(B.re), to_double(B.im));
    r.S = (abs(A) > R(0)) ? cd(to_double((B / A).re), to_double((B / A).im)) : cd{};
    r.wronskian_defect = to_double(drift);
    r.condition_estimate = to_double(growth * cancel_det * cancel_num);
    r.precision_used = tier_name;
    r.stats = stats;
    return r;
}

} // namespace conn_detail

// Integrates the center-regular solution out to the match point and solves
// for its coefficients along the two boundary branches.  With the automatic
// policy the computation is re-run at a higher precision tier whenever the
// Wronskian drift or the conditioning of the match says the current tier
// cannot certify the result.
inline ConnectionData connection_coeffs(const RadialProfile& p, const ModeParams& mp,
                                        const cd& lambda, const ConnTols& t = {},
                                        Precision req = Precision::automatic) {
    static const double tier_eps[3] = {real_traits<double>::eps(), real_traits<dd_real>::eps(),
                                       real_traits<f128>::eps()};
    int lo = 0, hi = 2;
    if (req == Precision::d64) lo = hi = 0;
    if (req == Precision::dd) lo = hi = 1;
    if (req == Precision::qd) lo = hi = 2;

    ConnectionData r;
    for (int tier = lo; tier <= hi; ++tier) {
        switch (tier) {
            case 0: r = conn_detail::run_tier<double>(p, mp, lambda, t, 0, "double"); break;
            case 1: r = conn_detail::run_tier<dd_real>(p, mp, lambda, t, 1, "dd"); break;
            default: r = conn_detail::run_tier<f128>(p, mp, lambda, t, 2, "qd"); break;
        }
        bool drift_ok = r.wronskian_defect <= t.wronskian_tol;
        bool cond_ok = r.condition_estimate * tier_eps[tier] <= t.cond_tol;
        if ((drift_ok && cond_ok) || tier == hi) {
            if (req == Precision::automatic && tier == hi && !drift_ok)
                throw ill_conditioned("wronskian drift persists at the highest tier");
            return r;
        }
    }
    return r; // unreachable
}

// S_l(lambda) = B/A; refuses to divide when A is vanishing (the caller is
// sitting on a resonance or eigenvalue and should be scanning for zeros).
inline cd mode_scattering(const RadialProfile& p, const ModeParams& mp, const cd& lambda,
                          const ConnTols& t = {}, Precision req = Precision::automatic) {
    ConnectionData r = connection_coeffs(p, mp, lambda, t, req);
    double a = abs(r.A), b = abs(r.B);
    if (!(a > t.resonance_tol * (b + 1e-300)))
        throw at_resonance("vanishing connection coefficient A");
    return r.S;
}

} // namespace ahres
