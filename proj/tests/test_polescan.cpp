#include "ahres/polescan.hpp"

#include "doctest.h"

using namespace ahres;

namespace {

ScanRegion box(double x0, double y0, double x1, double y1) {
    ScanRegion r;
    r.lo = cd(x0, y0);
    r.hi = cd(x1, y1);
    return r;
}

} // namespace

TEST_CASE("winding counts zeros of polynomials") {
    cd a(0.3, 0.2), b(-0.4, -0.1);
    Evaluator f1 = [&](const cd& z) { return z - a; };
    Evaluator f2 = [&](const cd& z) { return (z - a) * (z - a) * (z - b); };

    CHECK(winding_count(f1, box(-1, -1, 1, 1)) == 1);
    CHECK(winding_count(f1, box(0.5, -1, 1, 1)) == 0);
    CHECK(winding_count(f2, box(-1, -1, 1, 1)) == 3);
    CHECK(winding_count(f2, box(0.0, -1, 1, 1)) == 2); // only the double zero

    Evaluator g = [](const cd& z) { return exp(z); };
    CHECK(winding_count(g, box(-2, -2, 2, 2)) == 0);

    SUBCASE("counts are stable under contour density") {
        for (int per : {12, 24, 48}) {
            ScanRegion r = box(-1, -1, 1, 1);
            r.samples_per_edge = per;
            CHECK(winding_count(f2, r) == 3);
        }
    }
}

TEST_CASE("a zero sitting on the contour is refused") {
    cd a(1.0, 0.37); // on the right edge, off the sample grid
    Evaluator f = [&](const cd& z) { return z - a; };
    CHECK_THROWS_AS(winding_count(f, box(-1, -1, 1, 1)), zero_on_contour);
}

TEST_CASE("cubic zeros are located to 1e-12 and validated simple") {
    cd r1(0.25, 0.0), r2(-0.7, 0.4), r3(-0.7, -0.4);
    Evaluator f = [&](const cd& z) { return (z - r1) * (z - r2) * (z - r3); };
    ScanRegion r = box(-2, -2, 2, 2);
    auto hits = locate_zeros(f, r);
    REQUIRE(hits.size() == 3);
    // deterministic (re, im) ordering
    CHECK(abs(hits[0].z - r3) < 1e-12);
    CHECK(abs(hits[1].z - r2) < 1e-12);
    CHECK(abs(hits[2].z - r1) < 1e-12);
    for (const ZeroHit& h : hits) {
        CHECK(h.resolved);
        CHECK(h.simple);
        CHECK(h.winding == 1);
        CHECK(h.residual < 1e-12);
    }
    // real cubic: the complex pair closes under conjugation
    CHECK(abs(hits[0].z - conj(hits[1].z)) < 1e-12);

    SUBCASE("bit-identical results on a repeated run") {
        auto again = locate_zeros(f, r);
        REQUIRE(again.size() == 3);
        for (size_t i = 0; i < 3; ++i) {
            CHECK(again[i].z.re == hits[i].z.re);
            CHECK(again[i].z.im == hits[i].z.im);
        }
    }
}

TEST_CASE("a double zero is reported once with winding two") {
    cd a(0.1, -0.3);
    Evaluator f = [&](const cd& z) {
        cd d = z - a;
        return d * d;
    };
    auto hits = locate_zeros(f, box(-1, -1, 1, 1));
    REQUIRE(hits.size() == 1);
    CHECK(abs(hits[0].z - a) < 1e-8);
    CHECK(hits[0].winding == 2);
    CHECK_FALSE(hits[0].simple);
}

TEST_CASE("unperturbed profile keeps the spectral box empty") {
    RadialProfile p{2, 0, 0.0};
    ConnTols t;
    for (int l : {0, 3}) {
        ModeParams mp{2, l};
        Evaluator f = [&](const cd& z) { return connection_coeffs(p, mp, z, t).A; };
        CHECK(winding_count(f, box(0.3, -0.1, 0.7, 0.1)) == 0);
    }
}

TEST_CASE("unperturbed profile has no point spectrum in the scan interval") {
    RadialProfile p{2, 0, 0.0};
    for (int l : {0, 2}) {
        ModeParams mp{2, l};
        auto roots = eigenvalue_scan(p, mp, 1.05, 1.95);
        CHECK(roots.empty());
    }
    ModeParams mp{2, 0};
    CHECK_THROWS_AS(eigenvalue_scan(p, mp, 0.4, 1.95), domain_error);
}

TEST_CASE("perturbed modes develop a zero near the predicted point") {
    RadialProfile p{2, 0, 1.0};
    auto res = accumulation_experiment(p, 10, 12);
    CHECK(res.limit_point == doctest::Approx(0.5));
    CHECK(res.fit.misses == 0);
    REQUIRE(res.hits.size() == 3);
    for (const ResonanceHit& h : res.hits) {
        CHECK(h.found);
        CHECK(h.winding == 1);
        CHECK(h.in_band);
        CHECK(abs(h.ratio - cd(1.0)) < 0.35);
    }
}

TEST_CASE("accumulation rejects the resonant perturbation order") {
    RadialProfile bad{3, 1, 1.0};
    CHECK_THROWS_AS(accumulation_experiment(bad, 5, 6), domain_error);
}
