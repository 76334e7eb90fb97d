#include "ahres/normalform.hpp"

#include "doctest.h"

#include <random>

using namespace ahres;

namespace {

// random trig polynomial row with the reality invariant; |q|-decaying sizes
void fill_row(FourierJet& w, std::mt19937& rng, int m, double scale, double offset) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    w.set(m, 0, cd(offset + scale * U(rng)));
    for (int q = 1; q <= w.Q; ++q) {
        cd c(scale * U(rng) / (1.0 + q), scale * U(rng) / (1.0 + q));
        w.set(m, q, c);
        w.set(m, -q, conj(c));
    }
}

// positive boundary order, random even orders, and one odd order at 2k+1
FourierJet random_even_wjet(std::mt19937& rng, int Q, int M, int k, double amp_odd) {
    FourierJet w(M, Q);
    fill_row(w, rng, 0, 0.04, 1.0);
    for (int m = 2; m <= M; m += 2) fill_row(w, rng, m, 0.3, 0.0);
    if (2 * k + 1 <= M) fill_row(w, rng, 2 * k + 1, amp_odd, 0.0);
    return w;
}

std::vector<cd> random_omega0(std::mt19937& rng, int Q, double scale) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<cd> c(2 * size_t(Q) + 1);
    c[size_t(Q)] = cd(scale * U(rng));
    for (int q = 1; q <= Q; ++q) {
        cd a(scale * U(rng) / (1.0 + q), scale * U(rng) / (1.0 + q));
        c[size_t(Q + q)] = a;
        c[size_t(Q - q)] = conj(a);
    }
    return c;
}

double row_max(const FourierJet& jet, int m) {
    double mx = 0.0;
    for (int q = -jet.Q; q <= jet.Q; ++q) mx = std::max(mx, abs(jet.at(m, q)));
    return mx;
}

} // namespace

TEST_CASE("constant boundary data stays constant for any metric jet") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 5; ++trial) {
        FourierJet w = random_even_wjet(rng, 6, 8, 1, 0.5);
        std::vector<cd> o0 = {cd(0.7)};
        FourierJet jet = omega_jet(w, o0, 8);
        CHECK(abs(jet.at(0, 0) - cd(0.7)) < 1e-15);
        for (int m = 1; m <= jet.M; ++m) CHECK(row_max(jet, m) < 1e-12);
    }
}

TEST_CASE("flat metric second order matches the closed form") {
    FourierJet w(0, 0);
    w.set(0, 0, cd(1.0));
    std::vector<cd> o0 = {cd(0.5), cd(0.0), cd(0.5)}; // cos y
    FourierJet jet = omega_jet(w, o0, 4);

    // order 1 vanishes: the collar change has no linear term
    CHECK(row_max(jet, 1) == 0.0);
    // omega_2 = -(1 - cos 2y)/8
    CHECK(abs(jet.at(2, 0) - cd(-0.125)) < 1e-14);
    CHECK(abs(jet.at(2, 2) - cd(0.0625)) < 1e-14);
    CHECK(abs(jet.at(2, -2) - cd(0.0625)) < 1e-14);
    CHECK(abs(jet.at(2, 1)) < 1e-14);

    auto res = omega_residual(w, jet);
    for (double r : res) CHECK(r < 1e-12);
}

TEST_CASE("odd jets vanish through the first perturbed order") {
    std::mt19937 rng(777);
    for (int k : {1, 2}) {
        for (int trial = 0; trial < 4; ++trial) {
            FourierJet w = random_even_wjet(rng, 8, 10, k, 0.5);
            std::vector<cd> o0 = random_omega0(rng, 8, 0.5);
            FourierJet jet = omega_jet(w, o0, 10);
            for (int m = 1; m <= 2 * k + 1; m += 2) CHECK(row_max(jet, m) < 1e-13);
            // even orders carry content and the first admissible odd order fires
            CHECK(row_max(jet, 2) > 1e-6);
            CHECK(row_max(jet, 2 * k + 3) > 1e-9);
        }
    }
}

TEST_CASE("deeper truncation reproduces the leading coefficients") {
    std::mt19937 rng(31415);
    FourierJet w = random_even_wjet(rng, 8, 10, 1, 0.5);
    std::vector<cd> o0 = random_omega0(rng, 8, 0.5);
    FourierJet a = omega_jet(w, o0, 8);
    FourierJet b = omega_jet(w, o0, 10);
    REQUIRE(a.Q == b.Q);
    for (int m = 0; m <= 8; ++m)
        for (int q = -a.Q; q <= a.Q; ++q) CHECK(abs(a.at(m, q) - b.at(m, q)) < 1e-12);
}

TEST_CASE("collocation residual of a computed jet is at rounding level") {
    std::mt19937 rng(99);
    FourierJet w = random_even_wjet(rng, 8, 10, 2, 0.5);
    std::vector<cd> o0 = random_omega0(rng, 8, 0.5);
    FourierJet jet = omega_jet(w, o0, 10);
    auto res = omega_residual(w, jet);
    REQUIRE(res.size() == 10);
    for (double r : res) CHECK(r < 1e-10);

    SUBCASE("reality and structure of the output") {
        CHECK(jet.Q == 16);
        for (int m = 0; m <= jet.M; ++m)
            for (int q = 1; q <= jet.Q; ++q) {
                CHECK(jet.at(m, -q).re == jet.at(m, q).re);
                CHECK(jet.at(m, -q).im == -jet.at(m, q).im);
            }
    }
}

TEST_CASE("defective boundary data is refused") {
    FourierJet bad(0, 1);
    bad.set(0, 1, cd(0.5));
    bad.set(0, -1, cd(0.5)); // w0 = cos y, dips negative
    std::vector<cd> o0 = {cd(0.1)};
    CHECK_THROWS_AS(omega_jet(bad, o0, 4), non_positive_metric);

    FourierJet ok(0, 0);
    ok.set(0, 0, cd(1.0));
    CHECK_THROWS_AS(omega_jet(ok, {cd(0.1), cd(0.2)}, 4), domain_error);
    CHECK_THROWS_AS(omega_jet(ok, o0, 0), domain_error);
}
