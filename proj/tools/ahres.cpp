// Command-line driver: evaluates boundary residue operators, collar
// normal-form jets, mode connection data, resonance scans, accumulation
// experiments, and the self-verification battery, from a JSON configuration.
//
// Exit codes: 0 success, 2 invalid configuration, 3 numerical failure,
// 4 verification criterion failure.

#include "ahres/gz.hpp"
#include "ahres/hyperbolic.hpp"
#include "ahres/io.hpp"
#include "ahres/polescan.hpp"
#include "ahres/verify.hpp"

#include "CLI11.hpp"

#include <clocale>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace ahres;

namespace {

struct DriverOpts {
    std::string config_path;
    std::string out_dir = ".";
    bool svg = false;
    std::string precision; // empty: keep the config's choice
    int jobs = 1;
};

void apply_overrides(RunConfig& cfg, const DriverOpts& opt) {
    if (!opt.precision.empty()) {
        try {
            cfg.precision = parse_precision(opt.precision);
        } catch (const std::exception& e) {
            throw config_error(e.what());
        }
    }
    if (opt.svg) cfg.svg = true;
}

RunConfig load_config(const DriverOpts& opt, const std::string& engine) {
    RunConfig cfg;
    if (opt.config_path.empty()) {
        cfg.engine = engine;
    } else {
        std::string text;
        try {
            text = read_text_file(opt.config_path);
        } catch (const std::exception& e) {
            throw config_error(e.what());
        }
        cfg = parse_config(text);
        if (cfg.engine != engine)
            throw config_error("config engine '" + cfg.engine + "' does not match subcommand '" +
                               engine + "'");
    }
    apply_overrides(cfg, opt);
    return cfg;
}

// ---------------------------------------------------------------------------
// gz: exact residue operators of a rational metric jet
// ---------------------------------------------------------------------------

int run_gz(const RunConfig& cfg, const DriverOpts& opt) {
    RatSeries w(int(cfg.w.size()) - 1);
    ResidueReport rep;
    try {
        for (size_t j = 0; j < cfg.w.size(); ++j) w.coeff(int(j)) = parse_rational(cfg.w[j]);
        if (!(w.coeff(0) == BigRat(1)))
            throw config_error("metric jet must have constant coefficient 1");
        rep = scattering_residues(WarpedMetricJet{cfg.n, w}, cfg.k);
    } catch (const config_error&) {
        throw;
    } catch (const ring_error& e) {
        throw config_error(e.what());
    }

    json residues = json::array();
    for (const ResidueEntry& e : rep.entries) {
        json coeffs = json::array();
        for (int d = 0; d <= e.op.degree(); ++d)
            coeffs.push_back(e.op.coefficient(d).to_string());
        json je;
        je["l"] = e.l;
        je["lambda_l"] = rational_to_string(e.lambda_l);
        je["op_coefficients"] = std::move(coeffs);
        residues.push_back(std::move(je));
    }
    json checks;
    checks["odd_below_k_vanish"] = rep.odd_below_k_vanish;
    checks["expected_scalar"] = rational_to_string(rep.expected_scalar);
    checks["scalar_matches"] = rep.scalar_matches;
    checks["L_coeff"] = rational_to_string(rep.L_coeff);
    checks["expected_L_coeff"] = rational_to_string(rep.expected_L_coeff);
    checks["L_matches"] = rep.L_matches;
    checks["principal_part_vanishes"] = rep.principal_part_vanishes;

    json art;
    art["n"] = rep.n;
    art["k"] = rep.k;
    art["c"] = rational_to_string(rep.c);
    art["K"] = rational_to_string(rep.K);
    art["residues"] = std::move(residues);
    art["checks"] = std::move(checks);

    fs::path p = fs::path(opt.out_dir) / "gz_report.json";
    write_text_file(p, art.dump(2) + "\n");
    bool ok = rep.odd_below_k_vanish && rep.scalar_matches && rep.L_matches;
    std::cout << "wrote " << p.string() << " (identities hold: " << (ok ? "yes" : "no") << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------
// normalform: collar normal-form jet of boundary data
// ---------------------------------------------------------------------------

int run_normalform(const RunConfig& cfg, const DriverOpts& opt) {
    FourierJet jet;
    try {
        jet = omega_jet(cfg.wjet, cfg.omega0, cfg.M);
    } catch (const non_positive_metric& e) {
        throw config_error(e.what());
    } catch (const domain_error& e) {
        throw config_error(e.what());
    }
    std::vector<double> resid = omega_residual(cfg.wjet, jet);

    json art;
    art["M"] = cfg.M;
    art["omega"] = fourier_jet_to_json(jet);
    art["residual_by_order"] = resid;
    fs::path p = fs::path(opt.out_dir) / "normalform_jet.json";
    write_text_file(p, art.dump(2) + "\n");
    double worst = 0.0;
    for (double r : resid) worst = std::max(worst, r);
    std::cout << "wrote " << p.string() << " (max collar residual " << fmt_g17(worst) << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------
// modes: connection data on a grid of modes and spectral points
// ---------------------------------------------------------------------------

int run_modes(const RunConfig& cfg, const DriverOpts& opt) {
    ConnTols t = conn_tols_from(cfg.tol);
    const int nl = cfg.l_max - cfg.l_min + 1;
    const int nlam = int(cfg.lambdas.size());
    std::vector<ConnectionData> res(size_t(nl) * size_t(nlam));
    run_indexed(opt.jobs, nl * nlam, [&](int i) {
        int l = cfg.l_min + i / nlam;
        const cd& lam = cfg.lambdas[size_t(i % nlam)];
        RadialProfile p{cfg.n, cfg.k, cfg.c};
        ModeParams mp{cfg.n, l};
        res[size_t(i)] = connection_coeffs(p, mp, lam, t, cfg.precision);
    });

    CsvTable csv({"l", "v_l", "re_lambda", "im_lambda", "re_A", "im_A", "re_B", "im_B", "re_S",
                  "im_S", "wronskian_defect", "precision_used"});
    for (int i = 0; i < nl * nlam; ++i) {
        int l = cfg.l_min + i / nlam;
        const cd& lam = cfg.lambdas[size_t(i % nlam)];
        const ConnectionData& r = res[size_t(i)];
        ModeParams mp{cfg.n, l};
        csv.add_row({fmt_int(l), fmt_int(mp.v()), fmt_g17(lam.re), fmt_g17(lam.im),
                     fmt_g17(r.A.re), fmt_g17(r.A.im), fmt_g17(r.B.re), fmt_g17(r.B.im),
                     fmt_g17(r.S.re), fmt_g17(r.S.im), fmt_g17(r.wronskian_defect),
                     r.precision_used});
    }
    fs::path p = fs::path(opt.out_dir) / "modes.csv";
    write_text_file(p, csv.str());
    std::cout << "wrote " << p.string() << " (" << nl * nlam << " rows)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// resonances: argument-principle zero scan over a fixed box
// ---------------------------------------------------------------------------

int run_resonances(const RunConfig& cfg, const DriverOpts& opt) {
    ConnTols t = conn_tols_from(cfg.tol);
    const int nl = cfg.l_max - cfg.l_min + 1;
    std::vector<std::vector<ZeroHit>> res(static_cast<size_t>(nl));
    run_indexed(opt.jobs, nl, [&](int i) {
        int l = cfg.l_min + i;
        RadialProfile p{cfg.n, cfg.k, cfg.c};
        ModeParams mp{cfg.n, l};
        Evaluator f = [&](const cd& z) { return connection_coeffs(p, mp, z, t, cfg.precision).A; };
        ScanRegion r;
        r.lo = cfg.region_lo;
        r.hi = cfg.region_hi;
        r.zero_tol = cfg.tol.zero_tol;
        res[size_t(i)] = locate_zeros(f, r);
    });

    // one row per located zero; the prediction/ratio columns are only
    // meaningful for the accumulation engine and are written as 0 here
    CsvTable csv({"l", "v_l", "alpha_l", "re_zero", "im_zero", "winding", "predicted_re",
                  "predicted_im", "ratio_re", "ratio_im", "newton_residual"});
    std::vector<SvgPoint> dots;
    int count = 0;
    for (int i = 0; i < nl; ++i) {
        int l = cfg.l_min + i;
        ModeParams mp{cfg.n, l};
        for (const ZeroHit& z : res[size_t(i)]) {
            csv.add_row({fmt_int(l), fmt_int(mp.v()), fmt_g17(mp.alpha()), fmt_g17(z.z.re),
                         fmt_g17(z.z.im), fmt_int(z.winding), fmt_g17(0.0), fmt_g17(0.0),
                         fmt_g17(0.0), fmt_g17(0.0), fmt_g17(z.residual)});
            dots.push_back({z.z.re, z.z.im});
            ++count;
        }
    }
    fs::path p = fs::path(opt.out_dir) / "resonances.csv";
    write_text_file(p, csv.str());
    if (cfg.svg)
        write_text_file(fs::path(opt.out_dir) / "resonances.svg",
                        svg_scatter(dots, {}, "located zeros"));
    std::cout << "wrote " << p.string() << " (" << count << " zeros over " << nl << " modes)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// accumulate: zero drift toward the lattice point across a mode family
// ---------------------------------------------------------------------------

int run_accumulate(const RunConfig& cfg, const DriverOpts& opt) {
    ConnTols t = conn_tols_from(cfg.tol);
    const int nl = cfg.l_max - cfg.l_min + 1;
    const double limit = cfg.n - lambda_k_point(cfg.n, cfg.k);
    const double mk = accumulation_constant(cfg.n, cfg.k, cfg.c);
    RadialProfile p{cfg.n, cfg.k, cfg.c};

    std::vector<ResonanceHit> hits(static_cast<size_t>(nl));
    run_indexed(opt.jobs, nl, [&](int i) {
        hits[size_t(i)] = accumulation_single(p, cfg.l_min + i, t, cfg.precision);
    });
    AccumulationFit fit = accumulation_fit(hits, limit, mk);

    CsvTable csv({"l", "v_l", "alpha_l", "re_zero", "im_zero", "winding", "predicted_re",
                  "predicted_im", "ratio_re", "ratio_im", "newton_residual"});
    std::vector<SvgPoint> dots;
    for (const ResonanceHit& h : hits) {
        csv.add_row({fmt_int(h.l), fmt_int(h.v_l), fmt_g17(h.alpha_l),
                     fmt_g17(h.found ? h.zero.re : 0.0), fmt_g17(h.found ? h.zero.im : 0.0),
                     fmt_int(h.found ? h.winding : 0), fmt_g17(h.predicted.re),
                     fmt_g17(h.predicted.im), fmt_g17(h.found ? h.ratio.re : 0.0),
                     fmt_g17(h.found ? h.ratio.im : 0.0),
                     fmt_g17(h.found ? h.newton_residual : 0.0)});
        if (h.found) dots.push_back({h.zero.re, h.zero.im});
    }
    json jfit;
    jfit["slope"] = fit.slope;
    jfit["slope_ci"] = fit.slope_ci;
    jfit["m_k_used"] = fit.m_k_used;
    jfit["misses"] = fit.misses;

    fs::path pcsv = fs::path(opt.out_dir) / "accumulate.csv";
    write_text_file(pcsv, csv.str());
    write_text_file(fs::path(opt.out_dir) / "accumulate_fit.json", jfit.dump(2) + "\n");
    if (cfg.svg)
        write_text_file(fs::path(opt.out_dir) / "accumulate.svg",
                        svg_scatter(dots, {{limit, 0.0}}, "zero family and its limit point"));
    std::cout << "wrote " << pcsv.string() << " (slope " << fmt_g17(fit.slope) << ", misses "
              << fit.misses << ")\n";
    return 0;
}

int run_verify_cmd(const RunConfig& cfg, const DriverOpts& opt) {
    auto outcomes = run_verify(fs::path(opt.out_dir), cfg.seed, opt.jobs, std::cout);
    bool all = true;
    for (const CriterionOutcome& o : outcomes) all = all && o.pass;
    std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
    return all ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");
    CLI::App app{"scattering residue operators and resonances of warped-product metrics"};
    app.require_subcommand(1);

    DriverOpts opt;
    const std::vector<std::string> engines = {"gz",        "normalform", "modes",
                                              "resonances", "accumulate", "verify"};
    const std::vector<std::string> blurbs = {
        "exact boundary residue operators of a rational metric jet",
        "collar normal-form jet of boundary data",
        "connection coefficients over modes and spectral points",
        "argument-principle zero scan over a box",
        "zero drift toward the lattice point across a mode family",
        "run the verification battery"};
    for (size_t i = 0; i < engines.size(); ++i) {
        CLI::App* sub = app.add_subcommand(engines[i], blurbs[i]);
        CLI::Option* c = sub->add_option("--config", opt.config_path, "JSON run configuration");
        if (engines[i] != "verify") c->required();
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_flag("--svg", opt.svg, "also write an SVG scatter where supported");
        sub->add_option("--precision", opt.precision, "force a precision tier")
            ->check(CLI::IsMember({"double", "dd", "qd", "auto"}));
        sub->add_option("--jobs", opt.jobs, "worker threads (output is identical for any value)")
            ->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    const std::string engine = app.get_subcommands().front()->get_name();
    try {
        RunConfig cfg = load_config(opt, engine);
        fs::create_directories(fs::path(opt.out_dir));
        if (engine == "gz") return run_gz(cfg, opt);
        if (engine == "normalform") return run_normalform(cfg, opt);
        if (engine == "modes") return run_modes(cfg, opt);
        if (engine == "resonances") return run_resonances(cfg, opt);
        if (engine == "accumulate") return run_accumulate(cfg, opt);
        return run_verify_cmd(cfg, opt);
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
