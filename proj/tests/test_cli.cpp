#include "ahres/io.hpp"

#include "doctest.h"

#include <atomic>
#include <set>
#include <string>

using namespace ahres;

TEST_CASE("round-trip formatting survives parsing back") {
    for (double v : {0.1, 1.0 / 3.0, -2.7182818284590452, 1e-300, 5e300, 0.0}) {
        std::string s = fmt_g17(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("csv rows are fixed-width comma lines") {
    CsvTable t({"a", "b"});
    t.add_row({"1", "2"});
    t.add_row({"x", fmt_g17(0.5)});
    CHECK(t.str() == "a,b\n1,2\nx,0.5\n");
    CHECK_THROWS_AS(t.add_row({"only-one"}), std::logic_error);
}

TEST_CASE("indexed runner fills every slot once for any worker count") {
    const int count = 137;
    for (int jobs : {1, 3, 8}) {
        std::vector<int> slot(count, 0);
        std::atomic<int> calls{0};
        run_indexed(jobs, count, [&](int i) {
            slot[size_t(i)] = 3 * i + 1;
            calls.fetch_add(1);
        });
        CHECK(calls.load() == count);
        for (int i = 0; i < count; ++i) CHECK(slot[size_t(i)] == 3 * i + 1);
    }
}

TEST_CASE("indexed runner rethrows the lowest failing index") {
    auto boom = [](int i) {
        if (i == 5 || i == 11) throw std::runtime_error("task " + std::to_string(i));
    };
    CHECK_THROWS_WITH(run_indexed(4, 20, boom), "task 5");
    CHECK_THROWS_WITH(run_indexed(1, 20, boom), "task 5");
}

TEST_CASE("config parsing accepts a full accumulate run") {
    std::string text = R"({
      "engine": "accumulate", "n": 2, "k": 1, "c": 1.0,
      "l_range": [5, 40],
      "tolerances": {"ode_rtol": 1e-13, "wronskian_tol": 1e-9},
      "precision": "auto", "seed": 7, "svg": true
    })";
    RunConfig cfg = parse_config(text);
    CHECK(cfg.engine == "accumulate");
    CHECK(cfg.n == 2);
    CHECK(cfg.k == 1);
    CHECK(cfg.c == 1.0);
    CHECK(cfg.l_min == 5);
    CHECK(cfg.l_max == 40);
    CHECK(cfg.tol.wronskian_tol == 1e-9);
    CHECK(cfg.tol.lattice_guard == 1e-3); // untouched default
    CHECK(cfg.seed == 7);
    CHECK(cfg.svg);

    ConnTols t = conn_tols_from(cfg.tol);
    CHECK(t.ode_rtol[0] == 1e-13);
    CHECK(t.wronskian_tol == 1e-9);
}

TEST_CASE("config parsing rejects malformed and out-of-domain input") {
    // not JSON at all
    CHECK_THROWS_AS(parse_config("not json"), config_error);
    // missing engine
    CHECK_THROWS_AS(parse_config(R"({"n": 2})"), config_error);
    // unknown engine
    CHECK_THROWS_AS(parse_config(R"({"engine": "frobnicate"})"), config_error);
    // the resonant order 2k = n - 1 is outside the accumulation regime
    CHECK_THROWS_AS(parse_config(R"({"engine": "accumulate", "n": 3, "k": 1, "c": 1.0,
                                     "l_range": [5, 10]})"),
                    config_error);
    // accumulation needs a positive perturbation
    CHECK_THROWS_AS(parse_config(R"({"engine": "accumulate", "n": 2, "k": 0, "c": 0.0,
                                     "l_range": [5, 10]})"),
                    config_error);
    // metric jet coefficients must be rational strings
    CHECK_THROWS_AS(parse_config(R"({"engine": "gz", "n": 2, "w": [1, 0, 0.5]})"), config_error);
    // jet too short for the requested order
    CHECK_THROWS_AS(parse_config(R"({"engine": "gz", "n": 2, "k": 0, "w": ["1", "2"]})"),
                    config_error);
    // tolerances must be positive
    CHECK_THROWS_AS(parse_config(R"({"engine": "verify", "tolerances": {"ode_rtol": -1e-13}})"),
                    config_error);
    // modes needs spectral samples
    CHECK_THROWS_AS(parse_config(R"({"engine": "modes", "n": 2, "l_range": [0, 3]})"),
                    config_error);
    // region corners must be ordered
    CHECK_THROWS_AS(parse_config(R"({"engine": "resonances", "n": 2, "l_range": [0, 3],
                                     "region": {"lo": [0.7, -0.1], "hi": [0.3, 0.1]}})"),
                    config_error);
}

TEST_CASE("trigonometric jet tables survive a JSON round trip") {
    FourierJet f(2, 1);
    f.set(0, 0, cd(1.0, 0.0));
    f.set(1, 1, cd(0.25, -0.5));
    f.set(1, -1, cd(0.25, 0.5));
    f.set(2, 0, cd(-0.125, 0.0));
    json j = fourier_jet_to_json(f);
    std::string cfg_text = std::string(R"({"engine": "normalform", "M": 4, "omega0": [[0.5, 0]],
                                           "wjet": )") +
                           j.dump() + "}";
    RunConfig cfg = parse_config(cfg_text);
    REQUIRE(cfg.has_wjet);
    CHECK(cfg.wjet.M == 2);
    CHECK(cfg.wjet.Q == 1);
    for (int m = 0; m <= 2; ++m)
        for (int q = -1; q <= 1; ++q) CHECK(abs(cfg.wjet.at(m, q) - f.at(m, q)) == 0.0);
}

TEST_CASE("scatter plots are deterministic byte for byte") {
    std::vector<SvgPoint> dots = {{0.5, 0.0}, {0.51, 0.001}, {0.52, -0.002}};
    std::vector<SvgPoint> marks = {{0.5, 0.0}};
    std::string a = svg_scatter(dots, marks, "zeros");
    std::string b = svg_scatter(dots, marks, "zeros");
    CHECK(a == b);
    CHECK(a.find("<svg") == 0);
    CHECK(a.find("<circle") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);
}
