#pragma once

#include "ahres/cplx.hpp"
#include "ahres/numeric_errors.hpp"

#include <array>
#include <functional>

namespace ahres {

// Dormand-Prince 5(4) with the exact rational tableau, so every precision
// tier integrates with the same method constants.  State is two complex
// solutions of a second-order ODE: (u1, u1', u2, u2').  Error control is
// relative per solution pair, which keeps a tiny u1 and an O(1) u2 honest
// at the same time.
template <class R>
struct OdeState {
    using C = cplx<R>;
    std::array<C, 4> y{};
};

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evals = 0;
};

template <class R, class RHS, class OnAccept>
OdeStats integrate_pair(RHS&& rhs, R x0, R x1, OdeState<R>& state, double rtol_d,
                        OnAccept&& on_accept, long max_steps = 4000000) {
    using C = cplx<R>;
    using A4 = std::array<C, 4>;

    static const R a21 = R(1) / R(5);
    static const R a31 = R(3) / R(40), a32 = R(9) / R(40);
    static const R a41 = R(44) / R(45), a42 = R(-56) / R(15), a43 = R(32) / R(9);
    static const R a51 = R(19372) / R(6561), a52 = R(-25360) / R(2187),
                   a53 = R(64448) / R(6561), a54 = R(-212) / R(729);
    static const R a61 = R(9017) / R(3168), a62 = R(-355) / R(33),
                   a63 = R(46732) / R(5247), a64 = R(49) / R(176),
                   a65 = R(-5103) / R(18656);
    static const R b1 = R(35) / R(384), b3 = R(500) / R(1113), b4 = R(125) / R(192),
                   b5 = R(-2187) / R(6784), b6 = R(11) / R(84);
    static const R e1 = R(71) / R(57600), e3 = R(-71) / R(16695), e4 = R(71) / R(1920),
                   e5 = R(-17253) / R(339200), e6 = R(22) / R(525), e7 = R(-1) / R(40);
    static const R c2 = R(1) / R(5), c3 = R(3) / R(10), c4 = R(4) / R(5),
                   c5 = R(8) / R(9);

    const R rtol = real_traits<R>::from_double(rtol_d);
    const double eps = real_traits<R>::eps();
    const bool forward = x1 > x0;
    R x = x0;
    R h = (x1 - x0) * real_traits<R>::from_double(1e-4);

    OdeStats stats;
    A4 k1;
    rhs(x, state.y, k1);
    ++stats.rhs_evals;

    auto axpy = [](A4& out, const A4& y, const R& h, std::initializer_list<std::pair<const A4*, R>> terms) {
        for (int i = 0; i < 4; ++i) {
            C acc{};
            for (auto& [k, w] : terms) acc += w * (*k)[i];
            out[i] = y[i] + h * acc;
        }
    };

    while (true) {
        bool done = false;
        if (forward ? (x + h >= x1) : (x + h <= x1)) {
            h = x1 - x;
            done = true;
        }
        A4 k2, k3, k4, k5, k6, k7, yt, ynew;
        axpy(yt, state.y, h, {{&k1, a21}});
        rhs(x + c2 * h, yt, k2);
        axpy(yt, state.y, h, {{&k1, a31}, {&k2, a32}});
        rhs(x + c3 * h, yt, k3);
        axpy(yt, state.y, h, {{&k1, a41}, {&k2, a42}, {&k3, a43}});
        rhs(x + c4 * h, yt, k4);
        axpy(yt, state.y, h, {{&k1, a51}, {&k2, a52}, {&k3, a53}, {&k4, a54}});
        rhs(x + c5 * h, yt, k5);
        axpy(yt, state.y, h, {{&k1, a61}, {&k2, a62}, {&k3, a63}, {&k4, a64}, {&k5, a65}});
        rhs(x + h, yt, k6);
        axpy(ynew, state.y, h, {{&k1, b1}, {&k3, b3}, {&k4, b4}, {&k5, b5}, {&k6, b6}});
        rhs(x + h, ynew, k7);
        stats.rhs_evals += 6;

        // embedded error, scaled per solution pair
        R err{};
        for (int g = 0; g < 2; ++g) {
            R sc{};
            for (int i = 2 * g; i < 2 * g + 2; ++i) {
                R m1 = abs(state.y[i]), m2 = abs(ynew[i]);
                if (m1 > sc) sc = m1;
                if (m2 > sc) sc = m2;
            }
            sc = rtol * (sc + real_traits<R>::from_double(1e-280));
            for (int i = 2 * g; i < 2 * g + 2; ++i) {
                C ei = e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                       e7 * k7[i];
                R m = abs(h * ei) / sc;
                if (m > err) err = m;
            }
        }

        double errd = to_double(err);
        if (!std::isfinite(errd)) errd = 1e10;
        if (errd <= 1.0) {
            x = x + h;
            state.y = ynew;
            k1 = k7; // FSAL
            ++stats.accepted;
            // the callback may rewrite the state (e.g. replace a companion
            // solution); the cached first stage must then be refreshed
            if (on_accept(x, state.y)) {
                rhs(x, state.y, k1);
                ++stats.rhs_evals;
            }
            if (done) return stats;
        } else {
            ++stats.rejected;
            done = false;
        }
        double fac = 0.9 * std::pow(std::max(errd, 1e-30), -0.2);
        fac = std::min(5.0, std::max(0.2, fac));
        h = h * real_traits<R>::from_double(fac);
        if (to_double(abs(h)) < 32.0 * eps * std::max(1.0, std::abs(to_double(x))))
            throw integrator_failure("step size collapsed");
        if (stats.accepted + stats.rejected > max_steps)
            throw integrator_failure("step budget exhausted");
    }
}

} // namespace ahres
