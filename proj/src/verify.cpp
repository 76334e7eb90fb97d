#include "ahres/verify.hpp"

#include "ahres/gz.hpp"
#include "ahres/hyperbolic.hpp"
#include "ahres/io.hpp"
#include "ahres/polescan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace ahres {
namespace {

namespace fs = std::filesystem;

std::mt19937 seeded(std::uint64_t seed, int a, int b = 0) {
    std::seed_seq ss{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(a),
                     std::uint32_t(b)};
    return std::mt19937(ss);
}

std::string fmt3(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.3g", v);
    return std::string(b);
}

// ---------------------------------------------------------------------------
// generators matching the randomized unit fixtures
// ---------------------------------------------------------------------------

BigRat rand_rat(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 8);
    return BigRat(num(rng), den(rng));
}

// Random rational jet, even modulo O(x^{2k+1}), nonzero leading odd coefficient.
WarpedMetricJet rand_even_jet(std::mt19937& rng, int n, int k, int M) {
    RatSeries w(M);
    w.coeff(0) = 1;
    for (int j = 1; j <= M; ++j) {
        if (j % 2 == 1 && j < 2 * k + 1) continue;
        w.coeff(j) = rand_rat(rng);
    }
    while (w.coeff(2 * k + 1) == 0) w.coeff(2 * k + 1) = rand_rat(rng);
    return {n, w};
}

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

// distance from lambda to the nearest point of the real lattice 2*lambda - n in Z
double lattice_distance(int n, const cd& lam) {
    double nearest = 0.5 * (n + std::round(2.0 * lam.re - n));
    return std::hypot(lam.re - nearest, lam.im);
}

// ---------------------------------------------------------------------------
// criterion 1: exact residue identities on random rational metrics
// ---------------------------------------------------------------------------

CriterionOutcome crit1(const fs::path& out, std::uint64_t seed) {
    const int trials = 20;
    json groups = json::array();
    int total = 0, good = 0;
    for (int n : {2, 3, 4}) {
        for (int k : {0, 1, 2}) {
            std::mt19937 rng = seeded(seed, 101, n * 8 + k);
            bool group_ok = true;
            json example;
            for (int t = 0; t < trials; ++t) {
                WarpedMetricJet m = rand_even_jet(rng, n, k, 2 * k + 3);
                ResidueReport rep = scattering_residues(m, k);
                bool iff = (rep.L_coeff == BigRat(0)) == rep.principal_part_vanishes;
                bool ok = rep.odd_below_k_vanish && rep.scalar_matches && rep.L_matches && iff;
                ++total;
                if (ok) ++good;
                group_ok = group_ok && ok;
                if (t == 0) {
                    json ops = json::array();
                    for (const ResidueEntry& e : rep.entries) {
                        json coeffs = json::array();
                        for (int d = 0; d <= e.op.degree(); ++d)
                            coeffs.push_back(e.op.coefficient(d).to_string());
                        json je;
                        je["l"] = e.l;
                        je["lambda_l"] = rational_to_string(e.lambda_l);
                        je["op_coefficients"] = std::move(coeffs);
                        ops.push_back(std::move(je));
                    }
                    example["c"] = rational_to_string(rep.c);
                    example["scalar"] = rational_to_string(rep.expected_scalar);
                    example["L_coeff"] = rational_to_string(rep.L_coeff);
                    example["expected_L_coeff"] = rational_to_string(rep.expected_L_coeff);
                    example["residues"] = std::move(ops);
                }
            }
            json g;
            g["n"] = n;
            g["k"] = k;
            g["trials"] = trials;
            g["all_identities_hold"] = group_ok;
            g["example"] = std::move(example);
            groups.push_back(std::move(g));
        }
    }
    json art;
    art["trials_per_group"] = trials;
    art["groups"] = std::move(groups);
    art["checked"] = total;
    art["pass"] = (good == total);
    write_text_file(out / "c1_gz_residues.json", art.dump(2) + "\n");

    CriterionOutcome o;
    o.id = 1;
    o.name = "exact residue identities";
    o.pass = (good == total);
    o.detail = std::to_string(good) + "/" + std::to_string(total) +
               " random rational metrics satisfy all exact identities";
    return o;
}

// ---------------------------------------------------------------------------
// criterion 2: oddness of the boundary normal-form jet
// ---------------------------------------------------------------------------

CriterionOutcome crit2(const fs::path& out, std::uint64_t seed) {
    const int trials = 20, Q = 8, M = 10;
    const double thresh = 1e-10;
    json per_k = json::array();
    double worst = 0.0;
    bool pass = true;
    for (int k : {1, 2}) {
        std::mt19937 rng = seeded(seed, 102, k);
        double mx = 0.0;
        for (int t = 0; t < trials; ++t) {
            FourierJet w = random_even_wjet(rng, Q, M - 2, k, 0.5);
            std::vector<cd> o0 = random_omega0(rng, 3, 0.8);
            FourierJet jet = omega_jet(w, o0, M);
            for (int m = 1; m <= 2 * k + 1; m += 2) mx = std::max(mx, row_max(jet, m));
        }
        json g;
        g["k"] = k;
        g["trials"] = trials;
        g["max_odd_coefficient"] = mx;
        per_k.push_back(std::move(g));
        worst = std::max(worst, mx);
        pass = pass && (mx < thresh);
    }
    json art;
    art["Q"] = Q;
    art["M"] = M;
    art["threshold"] = thresh;
    art["per_k"] = std::move(per_k);
    art["max_odd_coefficient"] = worst;
    art["pass"] = pass;
    write_text_file(out / "c2_omega_oddness.json", art.dump(2) + "\n");

    CriterionOutcome o;
    o.id = 2;
    o.name = "boundary jet oddness";
    o.pass = pass;
    o.detail = "largest odd coefficient through order 2k+1 is " + fmt3(worst) + " (threshold " +
               fmt3(thresh) + ")";
    return o;
}

// ---------------------------------------------------------------------------
// criterion 3: agreement with the closed-form unperturbed scattering values
// ---------------------------------------------------------------------------

CriterionOutcome crit3(const fs::path& out, std::uint64_t seed, int jobs) {
    const int samples = 30;
    const double thresh = 1e-8;
    struct Sample {
        int n = 0, l = 0;
        cd lam;
        cd S, fix;
        double rel = 0.0;
        std::string prec;
    };
    std::vector<Sample> rows(samples);
    std::mt19937 rng = seeded(seed, 103);
    std::uniform_int_distribution<int> pick_n(2, 3), pick_l(0, 10), coin(0, 1);
    std::uniform_real_distribution<double> dre(-1.2, 1.2), dim(0.15, 1.0);
    for (Sample& s : rows) {
        s.n = pick_n(rng);
        s.l = pick_l(rng);
        do {
            double re = 0.5 * s.n + dre(rng);
            double im = (coin(rng) ? 1.0 : -1.0) * dim(rng);
            s.lam = cd(re, im);
        } while (lattice_distance(s.n, s.lam) <= 0.1);
    }
    run_indexed(jobs, samples, [&](int i) {
        Sample& s = rows[size_t(i)];
        RadialProfile p{s.n, 0, 0.0};
        ModeParams mp{s.n, s.l};
        ConnectionData r = connection_coeffs(p, mp, s.lam);
        s.S = r.S;
        s.prec = r.precision_used;
        s.fix = hyperbolic_mode_S(s.n, s.l, s.lam);
        s.rel = abs(s.S - s.fix) / abs(s.fix);
    });

    CsvTable csv({"n", "l", "re_lambda", "im_lambda", "re_S", "im_S", "re_fixture", "im_fixture",
                  "rel_err", "precision_used"});
    double worst = 0.0;
    for (const Sample& s : rows) {
        worst = std::max(worst, s.rel);
        csv.add_row({fmt_int(s.n), fmt_int(s.l), fmt_g17(s.lam.re), fmt_g17(s.lam.im),
                     fmt_g17(s.S.re), fmt_g17(s.S.im), fmt_g17(s.fix.re), fmt_g17(s.fix.im),
                     fmt_g17(s.rel), s.prec});
    }
    write_text_file(out / "c3_hyperbolic_agreement.csv", csv.str());

    CriterionOutcome o;
    o.id = 3;
    o.name = "closed-form mode agreement";
    o.pass = worst < thresh;
    o.detail = "worst relative error over " + std::to_string(samples) + " samples is " +
               fmt3(worst) + " (threshold " + fmt3(thresh) + ")";
    return o;
}

// ---------------------------------------------------------------------------
// criterion 4: structural invariants of the connection problem
// ---------------------------------------------------------------------------

CriterionOutcome crit4(const fs::path& out, std::uint64_t seed, int jobs) {
    const double tol_match = 1e-8, tol_wron = 1e-10, tol_unit = 1e-8, tol_recip = 1e-8;
    const int n = 2;

    // part A: invariance of (A, B) under the choice of match point
    const std::vector<std::pair<int, cd>> probes = {
        {0, cd(1.0, 0.8)}, {4, cd(0.7, 0.6)}, {9, cd(1.3, 1.1)}};
    const std::vector<double> x0s = {0.1, 0.2, 0.3};

    // part C: |S| = 1 on the critical line
    std::vector<std::tuple<double, int, double>> unit_cases; // (c, l, t)
    for (double c : {0.0, 1.0})
        for (int l : {0, 4, 9})
            for (double t : {0.5, 1.7, 5.0}) unit_cases.emplace_back(c, l, t);

    // part D: S(lambda) S(n - lambda) = 1 off the critical line
    std::vector<std::pair<int, cd>> recip_cases;
    {
        std::mt19937 rng = seeded(seed, 104);
        std::uniform_int_distribution<int> coin(0, 1);
        std::uniform_real_distribution<double> dre(-0.45, 0.45), dim(0.2, 0.9);
        for (int l : {1, 5})
            for (int t = 0; t < 3; ++t) {
                cd lam;
                do {
                    lam = cd(1.0 + dre(rng), (coin(rng) ? 1.0 : -1.0) * dim(rng));
                } while (lattice_distance(n, lam) <= 0.1);
                recip_cases.emplace_back(l, lam);
            }
    }

    const int nA = int(probes.size() * x0s.size());
    const int nC = int(unit_cases.size());
    const int nD = int(recip_cases.size());
    std::vector<ConnectionData> resA(static_cast<size_t>(nA));
    std::vector<cd> resC(static_cast<size_t>(nC));
    std::vector<std::pair<cd, cd>> resD(static_cast<size_t>(nD));

    run_indexed(jobs, nA + nC + nD, [&](int i) {
        if (i < nA) {
            int pi = i / int(x0s.size()), xi = i % int(x0s.size());
            RadialProfile p{n, 0, 1.0};
            ModeParams mp{n, probes[size_t(pi)].first};
            ConnTols t;
            t.x0 = x0s[size_t(xi)];
            resA[size_t(i)] = connection_coeffs(p, mp, probes[size_t(pi)].second, t);
        } else if (i < nA + nC) {
            auto [c, l, tt] = unit_cases[size_t(i - nA)];
            RadialProfile p{n, 0, c};
            ModeParams mp{n, l};
            resC[size_t(i - nA)] = mode_scattering(p, mp, cd(0.5 * n, tt));
        } else {
            auto [l, lam] = recip_cases[size_t(i - nA - nC)];
            RadialProfile p{n, 0, 1.0};
            ModeParams mp{n, l};
            resD[size_t(i - nA - nC)] = {mode_scattering(p, mp, lam),
                                         mode_scattering(p, mp, cd(double(n)) - lam)};
        }
    });

    double max_spread = 0.0, max_defect = 0.0;
    json match_cases = json::array();
    for (size_t pi = 0; pi < probes.size(); ++pi) {
        double amax = 0.0, bmax = 0.0, adiff = 0.0, bdiff = 0.0;
        for (size_t xi = 0; xi < x0s.size(); ++xi) {
            const ConnectionData& r = resA[pi * x0s.size() + xi];
            amax = std::max(amax, abs(r.A));
            bmax = std::max(bmax, abs(r.B));
            max_defect = std::max(max_defect, r.wronskian_defect);
            for (size_t xj = 0; xj < xi; ++xj) {
                const ConnectionData& q = resA[pi * x0s.size() + xj];
                adiff = std::max(adiff, abs(r.A - q.A));
                bdiff = std::max(bdiff, abs(r.B - q.B));
            }
        }
        double spread = std::max(adiff / amax, bdiff / bmax);
        max_spread = std::max(max_spread, spread);
        json c;
        c["l"] = probes[pi].first;
        c["re_lambda"] = probes[pi].second.re;
        c["im_lambda"] = probes[pi].second.im;
        c["rel_spread"] = spread;
        match_cases.push_back(std::move(c));
    }

    double max_unit = 0.0;
    json unit_rows = json::array();
    for (size_t i = 0; i < unit_cases.size(); ++i) {
        auto [c, l, tt] = unit_cases[i];
        double dev = std::abs(abs(resC[i]) - 1.0);
        max_unit = std::max(max_unit, dev);
        json r;
        r["c"] = c;
        r["l"] = l;
        r["im_lambda"] = tt;
        r["modulus_deviation"] = dev;
        unit_rows.push_back(std::move(r));
    }

    double max_recip = 0.0;
    json recip_rows = json::array();
    for (size_t i = 0; i < recip_cases.size(); ++i) {
        double dev = abs(resD[i].first * resD[i].second - cd(1.0));
        max_recip = std::max(max_recip, dev);
        json r;
        r["l"] = recip_cases[i].first;
        r["re_lambda"] = recip_cases[i].second.re;
        r["im_lambda"] = recip_cases[i].second.im;
        r["product_deviation"] = dev;
        recip_rows.push_back(std::move(r));
    }

    bool pass = max_spread < tol_match && max_defect < tol_wron && max_unit < tol_unit &&
                max_recip < tol_recip;
    json art;
    art["match_point"] = {{"x0_values", x0s}, {"cases", std::move(match_cases)},
                          {"max_rel_spread", max_spread}, {"threshold", tol_match}};
    art["wronskian"] = {{"max_defect", max_defect}, {"threshold", tol_wron}};
    art["unitarity"] = {{"cases", std::move(unit_rows)}, {"max_deviation", max_unit},
                        {"threshold", tol_unit}};
    art["reciprocity"] = {{"cases", std::move(recip_rows)}, {"max_deviation", max_recip},
                          {"threshold", tol_recip}};
    art["pass"] = pass;
    write_text_file(out / "c4_structural.json", art.dump(2) + "\n");

    CriterionOutcome o;
    o.id = 4;
    o.name = "structural invariants";
    o.pass = pass;
    o.detail = "match-point spread " + fmt3(max_spread) + ", drift " + fmt3(max_defect) +
               ", unitarity " + fmt3(max_unit) + ", reciprocity " + fmt3(max_recip);
    return o;
}

// ---------------------------------------------------------------------------
// criteria 5 and 7: accumulation law and simplicity of the located zeros
// ---------------------------------------------------------------------------

struct AccumRun {
    int k = 0;
    double limit = 0.0;
    double slope_target = 0.0, slope_tol = 0.0;
    std::vector<ResonanceHit> hits;
    AccumulationFit fit;
    bool found_all = false, all_in_band = false, slope_ok = false, ratio_ok = false;
    double ratio_err = 0.0;
};

CriterionOutcome crit5(const fs::path& out, int jobs, std::vector<AccumRun>& runs) {
    const int n = 2, l_min = 5, l_max = 40;
    const double c = 1.0;
    runs.assign(2, AccumRun{});
    runs[0].k = 0;
    runs[0].slope_target = -0.5;
    runs[0].slope_tol = 0.05;
    runs[1].k = 1;
    runs[1].slope_target = -1.5;
    runs[1].slope_tol = 0.1;

    const int per = l_max - l_min + 1;
    for (AccumRun& r : runs) {
        r.limit = n - lambda_k_point(n, r.k);
        r.hits.assign(size_t(per), ResonanceHit{});
    }
    run_indexed(jobs, 2 * per, [&](int i) {
        AccumRun& r = runs[size_t(i / per)];
        int l = l_min + i % per;
        RadialProfile p{n, r.k, c};
        r.hits[size_t(i % per)] = accumulation_single(p, l);
    });

    bool pass = true;
    for (AccumRun& r : runs) {
        r.fit = accumulation_fit(r.hits, r.limit, accumulation_constant(n, r.k, c));
        r.found_all = true;
        r.all_in_band = true;
        for (const ResonanceHit& h : r.hits) {
            if (h.l >= 10 && !h.found) r.found_all = false;
            if (h.found && !h.in_band) r.all_in_band = false;
        }
        r.slope_ok = std::abs(r.fit.slope - r.slope_target) <= r.slope_tol;
        const ResonanceHit& last = r.hits.back();
        r.ratio_err = last.found ? abs(last.ratio - cd(1.0)) : 1e9;
        r.ratio_ok = last.found && r.ratio_err <= 0.25;
        pass = pass && r.found_all && r.all_in_band && r.slope_ok && r.ratio_ok;

        CsvTable csv({"l", "v_l", "alpha_l", "re_zero", "im_zero", "winding", "predicted_re",
                      "predicted_im", "ratio_re", "ratio_im", "newton_residual"});
        for (const ResonanceHit& h : r.hits) {
            csv.add_row({fmt_int(h.l), fmt_int(h.v_l), fmt_g17(h.alpha_l),
                         fmt_g17(h.found ? h.zero.re : 0.0), fmt_g17(h.found ? h.zero.im : 0.0),
                         fmt_int(h.found ? h.winding : 0), fmt_g17(h.predicted.re),
                         fmt_g17(h.predicted.im), fmt_g17(h.found ? h.ratio.re : 0.0),
                         fmt_g17(h.found ? h.ratio.im : 0.0),
                         fmt_g17(h.found ? h.newton_residual : 0.0)});
        }
        std::string tag = "k" + std::to_string(r.k);
        write_text_file(out / ("c5_accumulate_" + tag + ".csv"), csv.str());
        json fit;
        fit["slope"] = r.fit.slope;
        fit["slope_ci"] = r.fit.slope_ci;
        fit["m_k_used"] = r.fit.m_k_used;
        fit["misses"] = r.fit.misses;
        write_text_file(out / ("c5_fit_" + tag + ".json"), fit.dump(2) + "\n");
    }

    CriterionOutcome o;
    o.id = 5;
    o.name = "resonance accumulation law";
    o.pass = pass;
    o.detail = "slopes " + fmt3(runs[0].fit.slope) + " (target -0.5+/-0.05) and " +
               fmt3(runs[1].fit.slope) + " (target -1.5+/-0.1); end ratio errors " +
               fmt3(runs[0].ratio_err) + ", " + fmt3(runs[1].ratio_err);
    return o;
}

CriterionOutcome crit7(const fs::path& out, const std::vector<AccumRun>& runs) {
    int checked = 0;
    json bad = json::array();
    for (const AccumRun& r : runs)
        for (const ResonanceHit& h : r.hits) {
            if (!h.found) continue;
            ++checked;
            if (h.winding != 1) {
                json b;
                b["k"] = r.k;
                b["l"] = h.l;
                b["winding"] = h.winding;
                bad.push_back(std::move(b));
            }
        }
    bool pass = bad.empty() && checked > 0;
    json art;
    art["zeros_checked"] = checked;
    art["non_simple"] = std::move(bad);
    art["pass"] = pass;
    write_text_file(out / "c7_simplicity.json", art.dump(2) + "\n");

    CriterionOutcome o;
    o.id = 7;
    o.name = "zero simplicity";
    o.pass = pass;
    o.detail = std::to_string(checked) + " accepted zeros re-validated with winding exactly 1";
    return o;
}

// ---------------------------------------------------------------------------
// criterion 6: unperturbed control (no spurious zeros, empty point spectrum)
// ---------------------------------------------------------------------------

CriterionOutcome crit6(const fs::path& out, int jobs) {
    const int n = 2, l_max = 20;
    struct Row {
        int l = 0, winding = 0;
        std::vector<double> eigs;
    };
    std::vector<Row> rows(size_t(l_max) + 1);
    run_indexed(jobs, l_max + 1, [&](int l) {
        Row& row = rows[size_t(l)];
        row.l = l;
        RadialProfile p{n, 0, 0.0};
        ModeParams mp{n, l};
        ConnTols t;
        Evaluator f = [&](const cd& z) { return connection_coeffs(p, mp, z, t).A; };
        ScanRegion r;
        r.lo = cd(0.3, -0.1);
        r.hi = cd(0.7, 0.1);
        row.winding = winding_count(f, r);
        row.eigs = eigenvalue_scan(p, mp, 1.05, 1.95, t);
    });

    bool pass = true;
    json per_l = json::array();
    for (const Row& row : rows) {
        pass = pass && row.winding == 0 && row.eigs.empty();
        json r;
        r["l"] = row.l;
        r["winding"] = row.winding;
        r["eigenvalues"] = row.eigs;
        per_l.push_back(std::move(r));
    }
    json art;
    art["box"] = {{"lo", {0.3, -0.1}}, {"hi", {0.7, 0.1}}};
    art["interval"] = {1.05, 1.95};
    art["per_l"] = std::move(per_l);
    art["pass"] = pass;
    write_text_file(out / "c6_control.json", art.dump(2) + "\n");

    CriterionOutcome o;
    o.id = 6;
    o.name = "unperturbed control";
    o.pass = pass;
    o.detail = "winding 0 over the box and empty point spectrum for every l <= " +
               std::to_string(l_max);
    return o;
}

} // namespace

std::vector<CriterionOutcome> run_verify(const fs::path& out_dir, std::uint64_t seed, int jobs,
                                         std::ostream& log) {
    fs::create_directories(out_dir);
    std::vector<CriterionOutcome> outcomes;
    std::vector<AccumRun> accum_runs;

    auto push = [&](CriterionOutcome o) {
        log << "criterion " << o.id << ": " << (o.pass ? "PASS" : "FAIL") << " -- " << o.name
            << " -- " << o.detail << "\n";
        log.flush();
        outcomes.push_back(std::move(o));
    };

    auto guarded = [&](int id, const char* name, auto&& fn) {
        try {
            push(fn());
        } catch (const std::exception& e) {
            CriterionOutcome o;
            o.id = id;
            o.name = name;
            o.pass = false;
            o.detail = std::string("aborted: ") + e.what();
            push(std::move(o));
        }
    };

    guarded(1, "exact residue identities", [&] { return crit1(out_dir, seed); });
    guarded(2, "boundary jet oddness", [&] { return crit2(out_dir, seed); });
    guarded(3, "closed-form mode agreement", [&] { return crit3(out_dir, seed, jobs); });
    guarded(4, "structural invariants", [&] { return crit4(out_dir, seed, jobs); });
    guarded(5, "resonance accumulation law", [&] { return crit5(out_dir, jobs, accum_runs); });
    guarded(6, "unperturbed control", [&] { return crit6(out_dir, jobs); });
    guarded(7, "zero simplicity", [&] { return crit7(out_dir, accum_runs); });

    std::sort(outcomes.begin(), outcomes.end(),
              [](const CriterionOutcome& a, const CriterionOutcome& b) { return a.id < b.id; });

    bool all = true;
    json rows = json::array();
    for (const CriterionOutcome& o : outcomes) {
        all = all && o.pass;
        json r;
        r["id"] = o.id;
        r["name"] = o.name;
        r["pass"] = o.pass;
        r["detail"] = o.detail;
        rows.push_back(std::move(r));
    }
    json summary;
    summary["seed"] = seed;
    summary["criteria"] = std::move(rows);
    summary["all_pass"] = all;
    write_text_file(out_dir / "verify_summary.json", summary.dump(2) + "\n");
    return outcomes;
}

} // namespace ahres
