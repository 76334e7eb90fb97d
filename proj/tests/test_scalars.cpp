#include "doctest.h"

#include "ahres/cplx.hpp"
#include "ahres/dd.hpp"
#include "ahres/f128.hpp"
#include "ahres/scalars.hpp"

#include <random>

using namespace ahres;

namespace {

dd_real dd_from_f128(const f128& x) {
    double hi = to_double(x);
    double lo = to_double(x - f128(hi));
    return dd_real(hi, lo);
}

double rel_err_dd(const dd_real& got, const f128& want) {
    f128 g = f128(got.hi) + f128(got.lo);
    f128 d = g - want;
    double den = std::max(1e-300, std::abs(to_double(want)));
    return std::abs(to_double(d)) / den;
}

} // namespace

TEST_CASE("double-double arithmetic recovers exact error terms") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        double a = U(rng), b = U(rng);
        // product of doubles is exactly representable in dd
        dd_real p = dd_real(a) * dd_real(b);
        f128 ref = f128(a) * f128(b);
        CHECK(rel_err_dd(p, ref) == 0.0);
        // sum of doubles is exactly representable in dd
        dd_real s = dd_real(a) + dd_real(b);
        CHECK(rel_err_dd(s, f128(a) + f128(b)) == 0.0);
    }
    // division and sqrt to full dd accuracy
    for (int i = 0; i < 200; ++i) {
        double a = U(rng) + 2.0, b = U(rng) + 2.0;
        dd_real q = dd_real(a) / dd_real(b);
        CHECK(rel_err_dd(q, f128(a) / f128(b)) < 1e-31);
        dd_real r = sqrt(dd_real(a));
        CHECK(rel_err_dd(r, sqrtq(__float128(a))) < 1e-31);
    }
}

TEST_CASE("double-double transcendentals agree with binary128") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double x = 30.0 * U(rng);
        CHECK(rel_err_dd(exp(dd_real(x)), exp(f128(x))) < 5e-30);
        double y = 1e-3 + 40.0 * std::abs(U(rng));
        CHECK(rel_err_dd(log(dd_real(y)), log(f128(y))) < 5e-30);
        double t = 20.0 * U(rng);
        dd_real s, c;
        sincos(dd_real(t), s, c);
        f128 s1, c1;
        sincos(f128(t), s1, c1);
        CHECK(std::abs(to_double(f128(s.hi) + f128(s.lo) - s1)) < 5e-30);
        CHECK(std::abs(to_double(f128(c.hi) + f128(c.lo) - c1)) < 5e-30);
        double u = U(rng), v = U(rng);
        if (std::abs(u) + std::abs(v) > 1e-3)
            CHECK(rel_err_dd(atan2(dd_real(v), dd_real(u)), atan2(f128(v), f128(u))) < 5e-30);
    }
    // pi round-trips through sincos
    dd_real s, c;
    sincos(dd_consts::pi, s, c);
    CHECK(std::abs(to_double(s)) < 1e-31);
    CHECK(to_double(c) == -1.0);
}

TEST_CASE_TEMPLATE("complex field identities hold in every tier", R, double, dd_real, f128) {
    using C = cplx<R>;
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    const double tol = 64.0 * real_traits<R>::eps();
    for (int i = 0; i < 100; ++i) {
        C a(real_traits<R>::from_double(U(rng)), real_traits<R>::from_double(U(rng)));
        C b(real_traits<R>::from_double(U(rng) + 3.0), real_traits<R>::from_double(U(rng)));
        C q = (a / b) * b - a;
        CHECK(to_double(abs(q)) < tol * (1.0 + to_double(abs(a))));
        C z = exp(log(b)) - b;
        CHECK(to_double(abs(z)) < tol * to_double(abs(b)));
        C w = sqrt(b) * sqrt(b) - b;
        CHECK(to_double(abs(w)) < tol * to_double(abs(b)));
    }
    // pow_real against integer powers
    R x = real_traits<R>::from_double(1.7);
    C p = pow_real(x, C(R(3)));
    CHECK(to_double(abs(p - C(x * x * x))) < tol * to_double(x * x * x));
}

TEST_CASE("tier metadata is consistent") {
    CHECK(std::string(real_traits<double>::name) == "double");
    CHECK(std::string(real_traits<dd_real>::name) == "dd");
    CHECK(std::string(real_traits<f128>::name) == "qd");
    CHECK(real_traits<dd_real>::eps() < 1e-30);
    CHECK(real_traits<f128>::eps() < 1e-33);
    CHECK(real_traits<f128>::eps() < real_traits<dd_real>::eps());
}
