#include "doctest.h"

#include "ahres/connection.hpp"
#include "ahres/hyperbolic.hpp"

#include <random>
#include <string>
#include <vector>

using namespace ahres;

namespace {

// series value plus first and second derivatives, for residual oracles
template <class R>
void eval_full(const cplx<R>& sigma, const std::vector<cplx<R>>& a, const R& x, cplx<R>& u,
               cplx<R>& up, cplx<R>& upp) {
    using C = cplx<R>;
    C s0{}, s1{}, s2{};
    R xm = R(1);
    for (size_t m = 0; m < a.size(); ++m) {
        C e = sigma + C(R(static_cast<long>(m)));
        C term = a[m] * xm;
        s0 += term;
        s1 += e * term;
        s2 += e * (e - C(R(1))) * term;
        xm = xm * x;
    }
    C xs = pow_real(x, sigma);
    u = xs * s0;
    up = xs * s1 / x;
    upp = xs * s2 / (x * x);
}

double horner(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

cd rand_lambda(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> Ur(-1.2, 1.2), Ui(0.25, 1.0);
    std::bernoulli_distribution B;
    double im = Ui(rng) * (B(rng) ? 1.0 : -1.0);
    return cd(0.5 * n + Ur(rng), im);
}

double rel(const cd& got, const cd& want) {
    return abs(got - want) / std::max(1e-300, abs(want));
}

} // namespace

TEST_CASE("embedded pair integrates the circle equation forward and backward") {
    using C = cplx<double>;
    auto rhs = [](const double&, const std::array<C, 4>& y, std::array<C, 4>& f) {
        f[0] = y[1];
        f[1] = -y[0];
        f[2] = y[3];
        f[3] = -y[2];
    };
    OdeState<double> st;
    st.y = {C(1.0), C(0.0), C(0.0), C(1.0)}; // (cos, -sin), (sin, cos) at 0... derivative of cos is -sin
    auto watch = [](const double&, std::array<C, 4>&) { return false; };
    OdeStats stats = integrate_pair(rhs, 0.0, 3.0, st, 1e-13, watch);
    CHECK(stats.accepted > 0);
    CHECK(abs(st.y[0] - C(std::cos(3.0))) < 1e-11);
    CHECK(abs(st.y[1] - C(-std::sin(3.0))) < 1e-11);
    CHECK(abs(st.y[2] - C(std::sin(3.0))) < 1e-11);
    CHECK(abs(st.y[3] - C(std::cos(3.0))) < 1e-11);
    // Wronskian of the two columns is identically 1
    CHECK(abs(st.y[0] * st.y[3] - st.y[1] * st.y[2] - C(1.0)) < 1e-12);
    // backward
    integrate_pair(rhs, 3.0, 0.5, st, 1e-13, watch);
    CHECK(abs(st.y[0] - C(std::cos(0.5))) < 1e-11);
}

TEST_CASE("profile values, branches, and derivative") {
    RadialProfile p{2, 0, 1.0};
    // polynomial window
    CHECK(profile_eval(p, 0.4).d == doctest::Approx(1.3216).epsilon(1e-14));
    // midpoint of the cutoff: chi(3/4) = 1/2 by symmetry of the step
    double chi, dchi;
    profile_cutoff(0.75, chi, dchi);
    CHECK(chi == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(profile_eval(p, 0.75).d == doctest::Approx(1.113525390625).epsilon(1e-13));
    // pure branch beyond the cutoff
    CHECK(profile_eval(p, 1.999).d == doctest::Approx(9.995000625e-7).epsilon(1e-12));

    // derivative against central differences across all three branches
    for (double x : {0.3, 0.6, 0.8, 0.95, 1.2, 1.7}) {
        double h = 1e-6;
        double fd = (profile_eval(p, x + h).d - profile_eval(p, x - h).d) / (2 * h);
        CHECK(profile_eval(p, x).dp == doctest::Approx(fd).epsilon(1e-7));
    }
    // positivity on a scan
    for (int i = 1; i < 400; ++i) CHECK(profile_eval(p, i * 0.005).d > 0.0);
    // domain errors
    CHECK_THROWS_AS(profile_eval(p, 0.0), domain_error);
    CHECK_THROWS_AS(profile_eval(p, 2.0), domain_error);
    CHECK_THROWS_AS(profile_eval(p, -0.5), domain_error);
    // unperturbed profile equals the squared factor exactly
    RadialProfile h3{2, 0, 0.0};
    for (double x : {0.2, 0.9, 1.5}) {
        double u = (2.0 - x) * (2.0 + x) / 4.0;
        CHECK(profile_eval(h3, x).d == u * u);
        CHECK(profile_eval(h3, x).dp == -x * u);
    }
}

TEST_CASE("boundary series: normalization, first coefficient, residual") {
    std::mt19937_64 rng(99);
    for (int n : {2, 3}) {
        RadialProfile p{n, 0, 1.0};
        ModeParams mp{n, 2};
        cd lam = rand_lambda(rng, n);
        cplx<double> l2(lam.re, lam.im);
        auto fo = frobenius_boundary(p, mp, l2, BoundaryBranch::outgoing, 40, 1e-3);
        auto fi = frobenius_boundary(p, mp, l2, BoundaryBranch::incoming, 40, 1e-3);
        CHECK(abs(fo.a[0] - cd(1.0)) == 0.0);
        CHECK(abs(fi.a[0] - cd(1.0)) == 0.0);
        // first-order coefficient for k=0 amplitude c: a1 = c n sigma / (2(n-2 sigma-1))
        for (auto* f : {&fo, &fi}) {
            cd sig = f->sigma;
            cd want = cd(double(n)) * sig / (cd(2.0) * (cd(double(n)) - cd(2.0) * sig - cd(1.0)));
            CHECK(rel(f->a[1], want) < 1e-13);
        }
        // ODE residual of the truncated series at x = 1/4 (inside the window)
        std::vector<double> dpoly = profile_poly(p);
        std::vector<double> xdp(dpoly.size());
        for (size_t i = 0; i < dpoly.size(); ++i) xdp[i] = double(i) * dpoly[i];
        double x = 0.25;
        double dv = horner(dpoly, x), xdv = horner(xdp, x);
        cd s = l2 * (cd(double(n)) - l2);
        for (auto* f : {&fo, &fi}) {
            cd u, up, upp;
            eval_full(f->sigma, f->a, x, u, up, upp);
            cd r = cd(-dv) * cd(x * x) * upp +
                   cd((n - 1) * dv - 0.5 * n * xdv) * cd(x) * up +
                   (cd(double(mp.v()) * x * x) - s * cd(dv)) * u;
            double scale = abs(cd(dv) * cd(x * x) * upp) + abs(u) + 1.0;
            CHECK(abs(r) < 1e-10 * scale);
        }
    }
    // k >= 1 kills the first-order coefficient
    RadialProfile p1{2, 1, 1.0};
    ModeParams mp1{2, 1};
    auto f1 = frobenius_boundary(p1, mp1, cd(0.8, 0.3), BoundaryBranch::outgoing, 30, 1e-3);
    CHECK(abs(f1.a[1]) == 0.0);
    // lattice guard trips on the half-integer lattice
    CHECK_THROWS_AS(frobenius_boundary(p1, mp1, cd(1.5, 0.0), BoundaryBranch::incoming, 30, 1e-3),
                    indicial_collision);
}

TEST_CASE("center series solves the hyperbolic branch of the mode equation") {
    RadialProfile p{2, 0, 1.0}; // cutoff vanishes on x >= 1, so c is irrelevant there
    for (int l : {0, 1, 5, 17}) {
        ModeParams mp{2, l};
        cd lam(0.62, 0.35);
        auto csr = frobenius_center(mp, lam, 40);
        CHECK(csr.rho == l);
        CHECK(abs(csr.b[0] - cd(1.0)) == 0.0);
        // residual of the x-equation at x = 2 - t, with d from profile_eval
        double t = 0.05, x = 2.0 - t;
        cd u, ut, utt;
        eval_full(cd(double(l)), csr.b, t, u, ut, utt); // series in t with prefactor t^l
        cd up = -ut, upp = utt;
        auto pv = profile_eval(p, x);
        cd s = lam * (cd(2.0) - lam);
        int n = 2;
        cd r = cd(-pv.d * x * x) * upp + cd(((n - 1) * pv.d - 0.5 * n * x * pv.dp) * x) * up +
               (cd(double(mp.v()) * x * x) - s * cd(pv.d)) * u;
        double scale = abs(cd(pv.d * x * x) * upp) + abs(u);
        CHECK(abs(r) < 1e-9 * scale);
    }
    // start data: l = 0 has a nonzero center limit
    ModeParams m0{2, 0};
    auto cs0 = frobenius_center(m0, cd(0.62, 0.35), 40);
    auto st = center_start(cs0, 1e-3);
    CHECK(abs(st.u) > 0.9);
    CHECK(st.tail < 1e-30);
}

TEST_CASE("elementary mode of the unperturbed space: S equals -2^(2-2 lambda)") {
    RadialProfile p{2, 0, 0.0};
    ModeParams mp{2, 0};
    for (cd lam : {cd(1.3, 0.7), cd(0.7, -0.4), cd(1.45, 0.1)}) {
        cd s = mode_scattering(p, mp, lam);
        cd want = -exp((cd(2.0) - cd(2.0) * lam) * cd(std::log(2.0)));
        CHECK(rel(s, want) < 1e-10);
        CHECK(rel(hyperbolic_mode_S(2, 0, lam), want) < 1e-12);
    }
}

TEST_CASE("gamma-ratio fixture validated against the numeric pipeline") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> Ln(0, 8);
    int checked = 0;
    for (int i = 0; i < 20; ++i) {
        int n = (i % 2) ? 3 : 2;
        int l = Ln(rng);
        RadialProfile p{n, 0, 0.0};
        ModeParams mp{n, l};
        cd lam = rand_lambda(rng, n);
        cd s_num = mode_scattering(p, mp, lam);
        cd s_fix = hyperbolic_mode_S(n, l, lam);
        CHECK(rel(s_num, s_fix) < 1e-8);
        ++checked;
    }
    CHECK(checked == 20);
    // a subset re-checked at the escalated double-double tier
    for (auto [n, l, lam] : {std::tuple<int, int, cd>{2, 3, cd(0.8, 0.55)},
                             {3, 1, cd(1.2, -0.6)},
                             {2, 7, cd(1.6, 0.35)},
                             {3, 5, cd(1.1, 0.8)}}) {
        RadialProfile p{n, 0, 0.0};
        ModeParams mp{n, l};
        ConnTols t;
        ConnectionData r = connection_coeffs(p, mp, lam, t, Precision::dd);
        CHECK(r.precision_used == "dd");
        CHECK(rel(r.S, hyperbolic_mode_S(n, l, lam)) < 1e-11);
    }
}

TEST_CASE("structural identities of the connection data") {
    std::mt19937_64 rng(555);
    RadialProfile p{2, 0, 1.0};
    ModeParams mp{2, 3};
    cd lam(0.8, 0.3);

    SUBCASE("match point invariance") {
        std::vector<ConnectionData> rs;
        for (double x0 : {0.1, 0.2, 0.3}) {
            ConnTols t;
            t.x0 = x0;
            rs.push_back(connection_coeffs(p, mp, lam, t));
        }
        for (size_t i = 1; i < rs.size(); ++i) {
            CHECK(rel(rs[i].A, rs[0].A) < 1e-8);
            CHECK(rel(rs[i].B, rs[0].B) < 1e-8);
        }
    }
    SUBCASE("conjugate symmetry and Wronskian drift") {
        ConnectionData r1 = connection_coeffs(p, mp, lam);
        ConnectionData r2 = connection_coeffs(p, mp, conj(lam));
        CHECK(rel(r2.A, conj(r1.A)) < 1e-10);
        CHECK(rel(r2.B, conj(r1.B)) < 1e-10);
        CHECK(r1.wronskian_defect < 1e-10);
        CHECK(r2.wronskian_defect < 1e-10);
    }
    SUBCASE("unitarity on the critical line") {
        for (double c : {0.0, 1.0}) {
            RadialProfile q{2, 0, c};
            for (int l : {0, 4, 9}) {
                for (double t : {0.5, 1.7, 5.0}) {
                    cd s = mode_scattering(q, ModeParams{2, l}, cd(1.0, t));
                    CHECK(std::abs(abs(s) - 1.0) < 1e-8);
                }
            }
        }
    }
    SUBCASE("reciprocity") {
        for (int i = 0; i < 6; ++i) {
            cd l1 = rand_lambda(rng, 2);
            cd s1 = mode_scattering(p, ModeParams{2, 2}, l1);
            cd s2 = mode_scattering(p, ModeParams{2, 2}, cd(2.0) - l1);
            CHECK(abs(s1 * s2 - cd(1.0)) < 1e-8);
        }
    }
    SUBCASE("precision forcing and reporting") {
        ConnectionData rd = connection_coeffs(p, mp, lam, ConnTols{}, Precision::d64);
        ConnectionData rq = connection_coeffs(p, mp, lam, ConnTols{}, Precision::dd);
        CHECK(rd.precision_used == "double");
        CHECK(rq.precision_used == "dd");
        CHECK(rel(rq.A, rd.A) < 1e-9);
        ConnectionData ra = connection_coeffs(p, mp, lam);
        CHECK(ra.precision_used == "double"); // benign point stays in the base tier
    }
    SUBCASE("error paths") {
        CHECK_THROWS_AS(connection_coeffs(p, mp, cd(1.5, 0.0)), indicial_collision);
        ConnTols bad;
        bad.x0 = 0.7;
        CHECK_THROWS_AS(connection_coeffs(p, mp, lam, bad), domain_error);
    }
}
