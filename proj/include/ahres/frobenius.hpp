#pragma once

#include "ahres/cplx.hpp"
#include "ahres/profile.hpp"

#include <vector>

namespace ahres {

// One spherical-harmonic mode: eigenvalue v = l(l+n-1) of the round Laplacian.
struct ModeParams {
    int n = 2;
    int l = 0;
    long v() const { return static_cast<long>(l) * (l + n - 1); }
    double alpha() const { return 1.0 / std::sqrt(1.0 + double(v())); }
};

// Truncated Frobenius solution x^sigma * sum a_m x^m about a regular singular
// point, together with the data needed for conditioning estimates.
template <class R>
struct FrobSeries {
    cplx<R> sigma;
    std::vector<cplx<R>> a;
    // growth = max_m |a_m| x0^m / max(1, |sum|): filled by eval
};

enum class BoundaryBranch { incoming, outgoing }; // sigma = n - lambda, sigma = lambda

// Boundary expansion of the mode equation written with the polynomial window
// of d (valid for x <= 1/2):
//   P2(x) x^2 u'' + P1(x) x u' + P0(x) u = 0,
//   P2 = -d, P1 = (n-1) d - (n/2) x d', P0 = v x^2 - lambda(n-lambda) d.
// The recursion denominator is m (n - 2 sigma - m); its smallest modulus over
// m <= M must clear the lattice guard.
template <class R>
FrobSeries<R> frobenius_boundary(const RadialProfile& p, const ModeParams& mp,
                                 const cplx<R>& lambda, BoundaryBranch branch, int M,
                                 double lattice_guard) {
    using C = cplx<R>;
    const int n = mp.n;
    std::vector<double> d = profile_poly(p);
    const int D = static_cast<int>(d.size()) - 1;

    C lam = lambda;
    C sig = (branch == BoundaryBranch::outgoing) ? lam : C(R(n)) - lam;
    C s = lam * (C(R(n)) - lam);

    // phi_i(z) = P2_i z(z-1) + P1_i z + P0_i
    auto phi = [&](int i, const C& z) -> C {
        R di = real_traits<R>::from_double(d[i]);
        R p2 = -di;
        R p1 = R(n - 1) * di - R(n) * R(i) * di / R(2);
        C p0 = -s * di;
        if (i == 2) p0 += C(R(mp.v()));
        return C(p2) * z * (z - C(R(1))) + C(p1) * z + p0;
    };

    // guard: the denominators m(n - 2 sigma - m) must stay off zero
    for (int m = 1; m <= M; ++m) {
        C den = C(R(m)) * (C(R(n)) - C(R(2)) * sig - C(R(m)));
        if (to_double(abs(den)) <= lattice_guard)
            throw indicial_collision("spectral parameter within lattice guard");
    }

    FrobSeries<R> f;
    f.sigma = sig;
    f.a.assign(M + 1, C{});
    f.a[0] = C(R(1));
    for (int m = 1; m <= M; ++m) {
        C acc{};
        for (int i = 1; i <= std::min(m, D); ++i) {
            if (d[i] == 0.0 && i != 2) continue;
            acc += phi(i, sig + C(R(m - i))) * f.a[m - i];
        }
        // phi_0(sigma+m) collapses to m (n - 2 sigma - m); the product form
        // avoids the cancellation the quadratic suffers near the lattice.
        C den = C(R(m)) * (C(R(n)) - C(R(2)) * sig - C(R(m)));
        f.a[m] = -acc / den;
    }
    return f;
}

template <class R>
struct FrobEval {
    cplx<R> u;
    cplx<R> up;     // du/dx
    R growth;       // sum |a_m| x^m / |sum a_m x^m|, cancellation measure
};

template <class R>
FrobEval<R> frobenius_eval(const FrobSeries<R>& f, const R& x) {
    using C = cplx<R>;
    C sum{}, dsum{};
    R absum{};
    R xm = R(1);
    for (size_t m = 0; m < f.a.size(); ++m) {
        C term = f.a[m] * xm;
        sum += term;
        dsum += (f.sigma + C(R(static_cast<long>(m)))) * term;
        absum += abs(term);
        xm = xm * x;
    }
    C xs = pow_real(x, f.sigma);
    FrobEval<R> e;
    e.u = xs * sum;
    e.up = xs * dsum / x;
    R den = abs(sum);
    e.growth = (den > R(0)) ? absum / den : absum / real_traits<R>::from_double(1e-300);
    return e;
}

// Center expansion at t = 2 - x against the analytic constant-curvature
// branch d = t^2 (4-t)^2 / 16 (the cutoff vanishes for x >= 1).  Multiplying
// the mode equation by 16 and collecting in t gives window-4 coefficients
//   At(t) t^2 u_tt + Bt(t) t u_t + Ct(t) u = 0, indicial roots l, -(l+n-1).
template <class R>
struct CenterSeries {
    int rho = 0;              // selected indicial root (the larger one)
    std::vector<cplx<R>> b;   // b[0] = 1
};

template <class R>
CenterSeries<R> frobenius_center(const ModeParams& mp, const cplx<R>& lambda, int M) {
    using C = cplx<R>;
    const int n = mp.n;
    const long v = mp.v();
    C s = lambda * (C(R(n)) - lambda);

    // At = -(2-t)^2 (4-t)^2, Bt = -(n-1) t (4-t)^2 (2-t) - 2n (4-t)(2-t)^3,
    // Ct = 16 v (2-t)^2 - s (4-t)^2 t^2, all degree 4.
    double At[5] = {-64.0, 96.0, -52.0, 12.0, -1.0};
    double Bt[5];
    {
        // t(4-t)^2(2-t) = 32 t - 32 t^2 + 10 t^3 - t^4
        // (4-t)(2-t)^3  = 32 - 56 t + 36 t^2 - 10 t^3 + t^4
        double f1[5] = {0.0, 32.0, -32.0, 10.0, -1.0};
        double f2[5] = {32.0, -56.0, 36.0, -10.0, 1.0};
        for (int i = 0; i < 5; ++i) Bt[i] = -(n - 1) * f1[i] - 2.0 * n * f2[i];
    }
    C Ct[5];
    {
        double g1[5] = {4.0, -4.0, 1.0, 0.0, 0.0};  // (2-t)^2
        double g2[5] = {0.0, 0.0, 16.0, -8.0, 1.0}; // (4-t)^2 t^2
        for (int i = 0; i < 5; ++i)
            Ct[i] = C(R(16.0 * v * g1[i])) - s * C(real_traits<R>::from_double(g2[i]));
    }

    // indicial roots of -64 z(z-1) - 64 n z + 64 v: z^2 + (n-1) z - v = 0
    double disc = std::sqrt((n - 1.0) * (n - 1.0) + 4.0 * double(v));
    double r1 = 0.5 * (-(n - 1.0) + disc);
    if (std::abs(r1 - mp.l) > 1e-9)
        throw numeric_error("center indicial root does not match the mode index");
    const int rho = mp.l;

    auto psi = [&](int i, const C& z) -> C {
        return C(real_traits<R>::from_double(At[i])) * z * (z - C(R(1))) +
               C(real_traits<R>::from_double(Bt[i])) * z + Ct[i];
    };

    CenterSeries<R> cs;
    cs.rho = rho;
    cs.b.assign(M + 1, C{});
    cs.b[0] = C(R(1));
    for (int m = 1; m <= M; ++m) {
        C acc{};
        for (int i = 1; i <= std::min(m, 4); ++i) acc += psi(i, C(R(rho + m - i))) * cs.b[m - i];
        // psi_0(rho+m) = -64 m (m + 2 rho + n - 1), never zero for m >= 1
        C den = C(R(-64.0 * m * (m + 2 * rho + n - 1)));
        cs.b[m] = -acc / den;
    }
    return cs;
}

// Value and x-derivative at x = 2 - t0 of the center solution rescaled by
// t0^{-rho}, i.e. of u(t) = (t/t0)^rho sum b_m t^m evaluated at t = t0.
template <class R>
struct CenterStart {
    cplx<R> u;
    cplx<R> ux;
    R tail; // magnitude of the last retained term relative to the sum
};

template <class R>
CenterStart<R> center_start(const CenterSeries<R>& cs, const R& t0) {
    using C = cplx<R>;
    C sum{}, dsum{}; // dsum = sum (rho + m) b_m t^m / t
    R tm = R(1);
    R last{};
    R absum{};
    for (size_t m = 0; m < cs.b.size(); ++m) {
        C term = cs.b[m] * tm;
        sum += term;
        dsum += C(R(static_cast<long>(cs.rho + m))) * term;
        last = abs(term);
        absum += last;
        tm = tm * t0;
    }
    CenterStart<R> st;
    st.u = sum;
    // du/dx = -du/dt
    st.ux = -(dsum / t0);
    R den = abs(sum);
    st.tail = (den > R(0)) ? last / den : last;
    return st;
}

} // namespace ahres
