#pragma once

#include "ahres/cplx.hpp"
#include "ahres/numeric_errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ahres {

// Jet of a circle-valued expansion f(x, y) = sum_m f_m(y) x^m with each f_m a
// trigonometric polynomial: coeffs[m][q + Q] holds the e^{iqy} coefficient.
// Reality invariant: the (m, -q) entry is the conjugate of the (m, q) entry.
struct FourierJet {
    int M = 0; // highest x-power stored
    int Q = 0; // highest harmonic stored
    std::vector<std::vector<cd>> coeffs;

    FourierJet() = default;
    FourierJet(int M_, int Q_)
        : M(M_), Q(Q_), coeffs(size_t(M_) + 1, std::vector<cd>(2 * size_t(Q_) + 1)) {}

    cd at(int m, int q) const {
        if (m < 0 || m > M || q < -Q || q > Q) return cd(0.0);
        return coeffs[size_t(m)][size_t(q + Q)];
    }
    void set(int m, int q, const cd& v) { coeffs[size_t(m)][size_t(q + Q)] = v; }
};

namespace nf_detail {

// Equispaced circle grid with direct (non-fast) transforms; N odd so the
// resolvable band is |q| <= (N-1)/2 and transforms are exact on it.
struct CircleGrid {
    int N;
    std::vector<double> cs, sn; // cos/sin(2 pi r / N), r = 0..N-1

    explicit CircleGrid(int N_) : N(N_), cs(size_t(N_)), sn(size_t(N_)) {
        for (int r = 0; r < N; ++r) {
            double a = 2.0 * 3.14159265358979323846 * double(r) / double(N);
            cs[size_t(r)] = std::cos(a);
            sn[size_t(r)] = std::sin(a);
        }
    }
    int half() const { return (N - 1) / 2; }

    // real samples of sum_q c_q e^{iqy}: uses q >= 0 plus the mirror, which
    // also symmetrizes any rounding-level violation of the reality invariant
    std::vector<double> to_grid(const std::vector<cd>& c, int Q) const {
        std::vector<double> f(size_t(N), 0.0);
        for (int j = 0; j < N; ++j) {
            double v = c[size_t(Q)].re;
            for (int q = 1; q <= Q; ++q) {
                int r = (q * j) % N;
                const cd& a = c[size_t(q + Q)];
                v += 2.0 * (a.re * cs[size_t(r)] - a.im * sn[size_t(r)]);
            }
            f[size_t(j)] = v;
        }
        return f;
    }

    // harmonics 0..half() of a real grid function; negative side by mirror
    std::vector<cd> to_harmonics(const std::vector<double>& f) const {
        int H = half();
        std::vector<cd> c(2 * size_t(H) + 1);
        for (int q = 0; q <= H; ++q) {
            double re = 0.0, im = 0.0;
            for (int j = 0; j < N; ++j) {
                int r = (q * j) % N;
                re += f[size_t(j)] * cs[size_t(r)];
                im -= f[size_t(j)] * sn[size_t(r)];
            }
            c[size_t(q + H)] = cd(re / N, im / N);
            if (q > 0) c[size_t(H - q)] = conj(c[size_t(q + H)]);
        }
        return c;
    }

    // d/dy of a real grid function, via its exact harmonic content
    std::vector<double> derivative(const std::vector<double>& f) const {
        std::vector<cd> c = to_harmonics(f);
        int H = half();
        std::vector<double> d(size_t(N), 0.0);
        for (int j = 0; j < N; ++j) {
            double v = 0.0;
            for (int q = 1; q <= H; ++q) {
                int r = (q * j) % N;
                const cd& a = c[size_t(q + H)];
                v -= 2.0 * q * (a.re * sn[size_t(r)] + a.im * cs[size_t(r)]);
            }
            d[size_t(j)] = v;
        }
        return d;
    }
};

inline std::vector<std::vector<double>> jet_grids(const FourierJet& jet, const CircleGrid& g,
                                                  int M) {
    std::vector<std::vector<double>> out(size_t(M) + 1, std::vector<double>(size_t(g.N), 0.0));
    for (int m = 0; m <= std::min(M, jet.M); ++m) out[size_t(m)] = g.to_grid(jet.coeffs[size_t(m)], jet.Q);
    return out;
}

} // namespace nf_detail

// Order-by-order jet of the boundary-collar change of defining function on a
// surface: with t = e^{omega} x, the collar condition reduces to
//   2 d_x omega + x ((d_x omega)^2 + (d_y omega)^2 / w) = 0,
// solved as a triangular recursion in the x-order.  All nonlinear terms are
// formed pointwise on a 4Q+1 collocation grid (direct transforms, pointwise
// reciprocal of w), so the grid-sampled residual of the returned jet vanishes
// to rounding.  The returned jet keeps every harmonic the grid resolves
// (Q_out = 2Q).
inline FourierJet omega_jet(const FourierJet& wjet, const std::vector<cd>& omega0, int M) {
    if (M < 1) throw domain_error("jet order must be at least 1");
    if (omega0.empty() || omega0.size() % 2 == 0)
        throw domain_error("boundary data needs centered harmonics of odd length");
    int q0 = (int(omega0.size()) - 1) / 2;
    int Q = std::max({wjet.Q, q0, 1});
    nf_detail::CircleGrid g(4 * Q + 1);
    const int N = g.N;

    // metric jet on the grid, with strict positivity of the boundary order
    std::vector<std::vector<double>> W = nf_detail::jet_grids(wjet, g, std::max(0, M - 2));
    double wmin = *std::min_element(W[0].begin(), W[0].end());
    if (!(wmin > 0.0)) throw non_positive_metric("boundary metric sample is not positive");

    // pointwise x-series reciprocal of w through the orders the recursion uses
    int MC = std::max(0, M - 2);
    std::vector<std::vector<double>> Winv(size_t(MC) + 1, std::vector<double>(size_t(N), 0.0));
    for (int j = 0; j < N; ++j) Winv[0][size_t(j)] = 1.0 / W[0][size_t(j)];
    for (int m = 1; m <= MC; ++m)
        for (int j = 0; j < N; ++j) {
            double acc = 0.0;
            for (int i = 1; i <= m; ++i) acc += W[size_t(i)][size_t(j)] * Winv[size_t(m - i)][size_t(j)];
            Winv[size_t(m)][size_t(j)] = -acc * Winv[0][size_t(j)];
        }

    // omega orders on the grid and their y-derivatives
    std::vector<std::vector<double>> O(size_t(M) + 1, std::vector<double>(size_t(N), 0.0));
    std::vector<std::vector<double>> OY(size_t(M) + 1, std::vector<double>(size_t(N), 0.0));
    std::vector<cd> o0(2 * size_t(Q) + 1);
    for (int q = -q0; q <= q0; ++q) o0[size_t(q + Q)] = omega0[size_t(q + q0)];
    O[0] = g.to_grid(o0, Q);
    OY[0] = g.derivative(O[0]);
    // order 1 vanishes identically: the equation has no x^{-1} source

    for (int p = 1; p < M; ++p) {
        std::vector<double> rhs(size_t(N), 0.0);
        // (d_x omega)^2 at x-order p-1: factors are the jets a+1 and b+1
        for (int a = 0; a <= p - 1; ++a) {
            int b = p - 1 - a;
            for (int j = 0; j < N; ++j)
                rhs[size_t(j)] += double(a + 1) * double(b + 1) * O[size_t(a + 1)][size_t(j)] *
                                  O[size_t(b + 1)][size_t(j)];
        }
        // (d_y omega)^2 / w at x-order p-1
        for (int a = 0; a <= p - 1; ++a)
            for (int b = 0; a + b <= p - 1; ++b) {
                int c = p - 1 - a - b;
                if (c > MC) continue;
                for (int j = 0; j < N; ++j)
                    rhs[size_t(j)] += OY[size_t(a)][size_t(j)] * OY[size_t(b)][size_t(j)] *
                                      Winv[size_t(c)][size_t(j)];
            }
        double inv = -1.0 / (2.0 * double(p + 1));
        for (int j = 0; j < N; ++j) O[size_t(p + 1)][size_t(j)] = inv * rhs[size_t(j)];
        OY[size_t(p + 1)] = g.derivative(O[size_t(p + 1)]);
    }

    FourierJet out(M, g.half());
    for (int m = 0; m <= M; ++m) out.coeffs[size_t(m)] = g.to_harmonics(O[size_t(m)]);
    return out;
}

// Max modulus, per x-order, of the collar equation applied to a computed jet,
// sampled on the collocation grid of the pair (wjet, jet).  Entry p is the
// x^p coefficient of 2 d_x omega + x ((d_x omega)^2 + (d_y omega)^2 / w),
// for p = 0 .. jet.M - 1.
inline std::vector<double> omega_residual(const FourierJet& wjet, const FourierJet& jet) {
    int Q = std::max({jet.Q, wjet.Q, 1});
    nf_detail::CircleGrid g(2 * Q + 1);
    const int N = g.N;
    const int M = jet.M;

    std::vector<std::vector<double>> W = nf_detail::jet_grids(wjet, g, std::max(0, M - 2));
    double wmin = *std::min_element(W[0].begin(), W[0].end());
    if (!(wmin > 0.0)) throw non_positive_metric("boundary metric sample is not positive");
    int MC = std::max(0, M - 2);
    std::vector<std::vector<double>> Winv(size_t(MC) + 1, std::vector<double>(size_t(N), 0.0));
    for (int j = 0; j < N; ++j) Winv[0][size_t(j)] = 1.0 / W[0][size_t(j)];
    for (int m = 1; m <= MC; ++m)
        for (int j = 0; j < N; ++j) {
            double acc = 0.0;
            for (int i = 1; i <= m; ++i) acc += W[size_t(i)][size_t(j)] * Winv[size_t(m - i)][size_t(j)];
            Winv[size_t(m)][size_t(j)] = -acc * Winv[0][size_t(j)];
        }

    std::vector<std::vector<double>> O = nf_detail::jet_grids(jet, g, M);
    std::vector<std::vector<double>> OY(size_t(M) + 1);
    for (int m = 0; m <= M; ++m) OY[size_t(m)] = g.derivative(O[size_t(m)]);

    std::vector<double> res(size_t(M), 0.0);
    for (int p = 0; p < M; ++p) {
        for (int j = 0; j < N; ++j) {
            double e = 2.0 * double(p + 1) * O[size_t(p + 1)][size_t(j)];
            for (int a = 0; a <= p - 1; ++a) {
                int b = p - 1 - a;
                e += double(a + 1) * double(b + 1) * O[size_t(a + 1)][size_t(j)] *
                     O[size_t(b + 1)][size_t(j)];
            }
            for (int a = 0; a <= p - 1; ++a)
                for (int b = 0; a + b <= p - 1; ++b) {
                    int c = p - 1 - a - b;
                    if (c > MC) continue;
                    e += OY[size_t(a)][size_t(j)] * OY[size_t(b)][size_t(j)] *
                         Winv[size_t(c)][size_t(j)];
                }
            res[size_t(p)] = std::max(res[size_t(p)], std::abs(e));
        }
    }
    return res;
}

} // namespace ahres
