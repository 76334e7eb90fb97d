#include "doctest.h"

#include "ahres/poly.hpp"
#include "ahres/ratfunc.hpp"
#include "ahres/xseries.hpp"

#include <random>

using namespace ahres;

namespace {

BigRat rand_rat(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 8);
    return BigRat(num(rng), den(rng));
}

Poly rand_poly(std::mt19937& rng, int maxdeg) {
    std::uniform_int_distribution<int> d(0, maxdeg);
    int deg = d(rng);
    std::vector<BigRat> c(deg + 1);
    for (auto& x : c) x = rand_rat(rng);
    return Poly(std::move(c));
}

RatFunc rand_ratfunc(std::mt19937& rng) {
    Poly den = rand_poly(rng, 3);
    while (den.is_zero()) den = rand_poly(rng, 3);
    return RatFunc(rand_poly(rng, 3), den);
}

} // namespace

TEST_CASE("rational parse and print round trip") {
    CHECK(parse_rational("3/4") == BigRat(3, 4));
    CHECK(parse_rational("-7/2") == BigRat(-7, 2));
    CHECK(parse_rational("5") == BigRat(5));
    CHECK(rational_to_string(BigRat(-7, 2)) == "-7/2");
    CHECK(rational_to_string(BigRat(4)) == "4");
    CHECK(rational_to_string(parse_rational("6/4")) == "3/2");
    CHECK_THROWS_AS(parse_rational("1/0"), ring_error);
    CHECK_THROWS_AS(parse_rational("x"), ring_error);
}

TEST_CASE("polynomial division and gcd") {
    std::mt19937 rng(91);
    for (int it = 0; it < 200; ++it) {
        Poly a = rand_poly(rng, 6);
        Poly b = rand_poly(rng, 4);
        if (b.is_zero()) continue;
        auto [q, r] = Poly::divmod(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
    }
    for (int it = 0; it < 100; ++it) {
        Poly a = rand_poly(rng, 3), b = rand_poly(rng, 3), m = rand_poly(rng, 2);
        if (m.is_zero() || a.is_zero() || b.is_zero()) continue;
        Poly g = Poly::gcd(a * m, b * m);
        CHECK(m.divides(g));           // common factor survives
        CHECK(g.divides(a * m));
        CHECK(g.divides(b * m));
        CHECK(g.lead() == 1);          // monic normalization
    }
}

TEST_CASE("rational function field laws and canonical form") {
    std::mt19937 rng(17);
    for (int it = 0; it < 120; ++it) {
        RatFunc a = rand_ratfunc(rng), b = rand_ratfunc(rng), c = rand_ratfunc(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a - a == RatFunc(0));
        if (!b.is_zero()) CHECK((a / b) * b == a);
        // canonical invariants
        CHECK(!a.den().is_zero());
        CHECK(a.den().lead() == 1);
        if (!a.is_zero()) CHECK(Poly::gcd(a.num(), a.den()).degree() == 0);
    }
    // cancellation happens eagerly
    Poly lam = Poly::var();
    RatFunc f(lam * lam - Poly(BigRat(1)), lam - Poly(BigRat(1)));
    CHECK(f == RatFunc(lam + Poly(BigRat(1))));
}

TEST_CASE("exact Laurent coefficients") {
    Poly lam = Poly::var();

    // (n - lambda) / (4 (lambda - 3/2)) for n = 2 has residue 1/8 at 3/2
    RatFunc f(Poly(BigRat(2)) - lam, BigRat(4) * (lam - Poly(BigRat(3, 2))));
    CHECK(laurent_coeff(f, BigRat(3, 2), 1) == BigRat(1, 8));
    CHECK(laurent_coeff(f, BigRat(3, 2), 2) == BigRat(0));

    // 1/(lambda-2)^2: coefficient 1 at p=2, zero at p=1 and p=3
    RatFunc g(Poly::one(), (lam - Poly(BigRat(2))) * (lam - Poly(BigRat(2))));
    CHECK(laurent_coeff(g, BigRat(2), 2) == BigRat(1));
    CHECK(laurent_coeff(g, BigRat(2), 1) == BigRat(0));
    CHECK(laurent_coeff(g, BigRat(2), 3) == BigRat(0));

    // regular points contribute nothing
    CHECK(laurent_coeff(g, BigRat(5), 1) == BigRat(0));
    CHECK(g.pole_order_at(BigRat(2)) == 2);
    CHECK(g.pole_order_at(BigRat(5)) == 0);
}

TEST_CASE("Laurent principal part reconstruction") {
    std::mt19937 rng(23);
    Poly lam = Poly::var();
    for (int it = 0; it < 60; ++it) {
        BigRat x0 = rand_rat(rng);
        std::uniform_int_distribution<int> qd(1, 3);
        int q = qd(rng);
        Poly den = Poly::one();
        Poly lin = lam - Poly(x0);
        for (int i = 0; i < q; ++i) den = den * lin;
        Poly reg = rand_poly(rng, 2);
        if (reg.eval(x0) == 0) continue; // keep the pole order exactly q
        Poly num = rand_poly(rng, q + 1);
        while (num.is_zero() || (num % lin).is_zero()) num = rand_poly(rng, q + 1);
        RatFunc f(num, den * reg);
        // subtracting the full principal part leaves a regular function
        RatFunc rest = f;
        for (int p = 1; p <= q; ++p) {
            BigRat cp = laurent_coeff(f, x0, p);
            Poly dp = Poly::one();
            for (int i = 0; i < p; ++i) dp = dp * lin;
            rest = rest - RatFunc(Poly(cp), dp);
        }
        CHECK(!rest.has_pole_at(x0));
    }
}

TEST_CASE("series arithmetic tracks truncation order") {
    RatSeries a = RatSeries::constant(BigRat(1), 5);
    RatSeries b = RatSeries::constant(BigRat(1), 3);
    CHECK((a + b).order() == 3);
    CHECK((a * b).order() == 3);
    CHECK(a.derivative().order() == 4);
    CHECK(a.shifted_up(2).order() == 7);
    CHECK_THROWS_AS(a.coeff(6), ring_error);
}

TEST_CASE("series reciprocal round trip and geometric oracle") {
    // 1/(1-x) = sum x^m
    RatSeries s(8);
    s.coeff(0) = 1;
    s.coeff(1) = -1;
    RatSeries r = s.reciprocal();
    for (int j = 0; j <= 8; ++j) CHECK(r.coeff(j) == BigRat(1));
    RatSeries prod = s * r;
    CHECK(prod.coeff(0) == BigRat(1));
    for (int j = 1; j <= 8; ++j) CHECK(prod.coeff(j) == BigRat(0));

    std::mt19937 rng(5);
    for (int it = 0; it < 40; ++it) {
        RatSeries t(6);
        t.coeff(0) = 1;
        for (int j = 1; j <= 6; ++j) t.coeff(j) = rand_rat(rng);
        RatSeries u = t.reciprocal();
        RatSeries p = t * u;
        CHECK(p.coeff(0) == BigRat(1));
        for (int j = 1; j <= 6; ++j) CHECK(p.coeff(j) == BigRat(0));
        CHECK(u.reciprocal() == t);
    }
}

TEST_CASE("binomial oracle for the model profile reciprocal") {
    // w = (1 - x^2/4)^2, so 1/w = sum (m+1) (x^2/4)^m by the binomial series.
    RatSeries w(8);
    w.coeff(0) = 1;
    w.coeff(2) = BigRat(-1, 2);
    w.coeff(4) = BigRat(1, 16);
    RatSeries r = w.reciprocal();
    for (int j = 0; j <= 8; ++j) {
        BigRat expect(0);
        if (j % 2 == 0) {
            int mm = j / 2;
            BigRat pw(1);
            for (int i = 0; i < mm; ++i) pw /= 4;
            expect = BigRat(mm + 1) * pw;
        }
        CHECK(r.coeff(j) == expect);
    }
    CHECK(r.coeff(2) == BigRat(1, 2));
    CHECK(r.coeff(4) == BigRat(3, 16));
}
