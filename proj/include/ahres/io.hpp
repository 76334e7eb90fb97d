#pragma once

#include "ahres/connection.hpp"
#include "ahres/normalform.hpp"

#include "json.hpp"

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace ahres {

using json = nlohmann::ordered_json;

// Rejected run configuration: malformed JSON, unknown engine, values outside
// the supported domain.  The command-line driver maps this to exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// deterministic text formatting
// ---------------------------------------------------------------------------

// Fixed-width round-trip formatting for doubles.  All tabular output goes
// through this one function so that byte-level reproducibility only depends
// on the computed values.  (The driver pins LC_NUMERIC to "C".)
inline std::string fmt_g17(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.17g", v);
    return std::string(b);
}

inline std::string fmt_int(long long v) { return std::to_string(v); }

// Rectangular CSV builder: header row plus one line per record, no quoting
// (fields are numbers and plain tokens), '\n' line endings.
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> columns) : width_(columns.size()) {
        append_line(columns);
    }
    void add_row(const std::vector<std::string>& fields) {
        if (fields.size() != width_) throw std::logic_error("csv row width mismatch");
        append_line(fields);
    }
    const std::string& str() const { return text_; }

  private:
    void append_line(const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) text_ += ',';
            text_ += fields[i];
        }
        text_ += '\n';
    }
    size_t width_;
    std::string text_;
};

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

// ---------------------------------------------------------------------------
// deterministic task pool
// ---------------------------------------------------------------------------

// Runs fn(0), ..., fn(count-1) on up to `jobs` worker threads.  Workers claim
// indices from an atomic counter; each task writes only into its own slot of
// caller-owned result storage, so gathering the slots in index order yields
// output that does not depend on the worker count or interleaving.  The
// lowest-indexed task failure is rethrown after all workers join.
template <class F>
inline void run_indexed(int jobs, int count, F&& fn) {
    if (count <= 0) return;
    if (jobs > count) jobs = count;
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errs(static_cast<size_t>(count));
    auto work = [&] {
        for (int i; (i = next.fetch_add(1)) < count;) {
            try {
                fn(i);
            } catch (...) {
                errs[size_t(i)] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(size_t(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------
// run configuration
// ---------------------------------------------------------------------------

struct ToleranceConfig {
    double ode_rtol = 1e-13;     // double-tier integrator target; dd/qd scale with it
    double zero_tol = 0.0;       // zero-refinement size; 0 derives it from the scan box
    double lattice_guard = 1e-3; // keep-out radius around half-integer lattice points
    double wronskian_tol = 1e-10;
};

struct RunConfig {
    std::string engine; // gz | normalform | modes | resonances | accumulate | verify

    // radial problem: boundary dimension, perturbation order and amplitude
    int n = 2;
    int k = 0;
    double c = 0.0;

    // gz engine: exact rational metric jet, constant coefficient first
    std::vector<std::string> w;

    // normalform engine
    int M = 0;         // requested jet depth
    FourierJet wjet;   // metric jet as a trigonometric table
    bool has_wjet = false;
    std::vector<cd> omega0; // boundary conformal exponent, centered odd-length row

    // mode sweeps
    int l_min = 0, l_max = 0;
    bool has_l_range = false;
    std::vector<cd> lambdas;

    // resonance scan box (lower-left, upper-right)
    cd region_lo{}, region_hi{};
    bool has_region = false;

    ToleranceConfig tol;
    Precision precision = Precision::automatic;
    std::uint64_t seed = 20250817u;
    bool svg = false;
};

namespace io_detail {

inline double as_number(const json& v, const std::string& what) {
    if (!v.is_number()) throw config_error(what + " must be a number");
    return v.get<double>();
}

inline int as_integer(const json& v, const std::string& what) {
    if (!v.is_number_integer()) throw config_error(what + " must be an integer");
    return v.get<int>();
}

// complex scalar: [re, im] pair or a bare real number
inline cd as_complex(const json& v, const std::string& what) {
    if (v.is_number()) return cd(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return cd(v[0].get<double>(), v[1].get<double>());
    throw config_error(what + " must be a number or an [re, im] pair");
}

inline FourierJet jet_from_json(const json& j, const std::string& what) {
    if (!j.is_object() || !j.contains("Q") || !j.contains("rows"))
        throw config_error(what + " must be an object with Q and rows");
    int Q = as_integer(j.at("Q"), what + ".Q");
    const json& rows = j.at("rows");
    if (Q < 0 || !rows.is_array() || rows.empty())
        throw config_error(what + ".rows must be a non-empty array");
    FourierJet f(int(rows.size()) - 1, Q);
    for (size_t m = 0; m < rows.size(); ++m) {
        const json& row = rows[m];
        if (!row.is_array() || row.size() != size_t(2 * Q + 1))
            throw config_error(what + " rows must have 2Q+1 entries");
        for (int q = -Q; q <= Q; ++q)
            f.set(int(m), q, as_complex(row[size_t(q + Q)], what + " entry"));
    }
    return f;
}

} // namespace io_detail

inline json fourier_jet_to_json(const FourierJet& f) {
    json rows = json::array();
    for (int m = 0; m <= f.M; ++m) {
        json row = json::array();
        for (int q = -f.Q; q <= f.Q; ++q) {
            cd v = f.at(m, q);
            row.push_back(json::array({v.re, v.im}));
        }
        rows.push_back(std::move(row));
    }
    json out;
    out["M"] = f.M;
    out["Q"] = f.Q;
    out["rows"] = std::move(rows);
    return out;
}

// Parses and validates a run configuration.  Throws config_error on any
// malformed or out-of-domain input.
inline RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config must be a JSON object");

    RunConfig cfg;
    if (!j.contains("engine") || !j.at("engine").is_string())
        throw config_error("config requires a string field 'engine'");
    cfg.engine = j.at("engine").get<std::string>();

    using io_detail::as_complex;
    using io_detail::as_integer;
    using io_detail::as_number;

    if (j.contains("n")) cfg.n = as_integer(j.at("n"), "n");
    if (j.contains("k")) cfg.k = as_integer(j.at("k"), "k");
    if (j.contains("c")) cfg.c = as_number(j.at("c"), "c");
    if (cfg.n < 1) throw config_error("n must be at least 1");
    if (cfg.k < 0) throw config_error("k must be non-negative");

    if (j.contains("w")) {
        const json& w = j.at("w");
        if (!w.is_array() || w.empty()) throw config_error("w must be a non-empty array");
        for (const json& e : w) {
            if (!e.is_string())
                throw config_error("metric jet coefficients must be rational strings like \"p/q\"");
            cfg.w.push_back(e.get<std::string>());
        }
    }

    if (j.contains("M")) cfg.M = as_integer(j.at("M"), "M");
    if (j.contains("wjet")) {
        cfg.wjet = io_detail::jet_from_json(j.at("wjet"), "wjet");
        cfg.has_wjet = true;
    }
    if (j.contains("omega0")) {
        const json& o = j.at("omega0");
        if (!o.is_array() || o.empty()) throw config_error("omega0 must be a non-empty array");
        for (const json& e : o) cfg.omega0.push_back(as_complex(e, "omega0 entry"));
    }

    if (j.contains("l_range")) {
        const json& r = j.at("l_range");
        if (!r.is_array() || r.size() != 2)
            throw config_error("l_range must be [l_min, l_max]");
        cfg.l_min = as_integer(r[0], "l_range[0]");
        cfg.l_max = as_integer(r[1], "l_range[1]");
        if (cfg.l_min < 0 || cfg.l_max < cfg.l_min)
            throw config_error("l_range must satisfy 0 <= l_min <= l_max");
        cfg.has_l_range = true;
    }

    if (j.contains("lambda")) {
        const json& ls = j.at("lambda");
        if (!ls.is_array() || ls.empty()) throw config_error("lambda must be a non-empty array");
        for (const json& e : ls) cfg.lambdas.push_back(as_complex(e, "lambda entry"));
    }

    if (j.contains("region")) {
        const json& r = j.at("region");
        if (!r.is_object() || !r.contains("lo") || !r.contains("hi"))
            throw config_error("region must be an object with lo and hi corners");
        cfg.region_lo = as_complex(r.at("lo"), "region.lo");
        cfg.region_hi = as_complex(r.at("hi"), "region.hi");
        if (!(cfg.region_lo.re < cfg.region_hi.re && cfg.region_lo.im < cfg.region_hi.im))
            throw config_error("region.lo must be strictly below region.hi in both coordinates");
        cfg.has_region = true;
    }

    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (!t.is_object()) throw config_error("tolerances must be an object");
        if (t.contains("ode_rtol")) cfg.tol.ode_rtol = as_number(t.at("ode_rtol"), "ode_rtol");
        if (t.contains("zero_tol")) cfg.tol.zero_tol = as_number(t.at("zero_tol"), "zero_tol");
        if (t.contains("lattice_guard"))
            cfg.tol.lattice_guard = as_number(t.at("lattice_guard"), "lattice_guard");
        if (t.contains("wronskian_tol"))
            cfg.tol.wronskian_tol = as_number(t.at("wronskian_tol"), "wronskian_tol");
        if (!(cfg.tol.ode_rtol > 0) || !(cfg.tol.lattice_guard > 0) ||
            !(cfg.tol.wronskian_tol > 0) || cfg.tol.zero_tol < 0)
            throw config_error("tolerances must be positive (zero_tol may be 0 for automatic)");
    }

    if (j.contains("precision")) {
        if (!j.at("precision").is_string()) throw config_error("precision must be a string");
        try {
            cfg.precision = parse_precision(j.at("precision").get<std::string>());
        } catch (const std::exception& e) {
            throw config_error(e.what());
        }
    }

    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (!s.is_number_unsigned() && !s.is_number_integer())
            throw config_error("seed must be a non-negative integer");
        long long v = s.get<long long>();
        if (v < 0) throw config_error("seed must be a non-negative integer");
        cfg.seed = std::uint64_t(v);
    }

    if (j.contains("svg")) {
        if (!j.at("svg").is_boolean()) throw config_error("svg must be a boolean");
        cfg.svg = j.at("svg").get<bool>();
    }

    // engine-specific completeness and domain checks
    if (cfg.engine == "gz") {
        if (cfg.w.empty()) throw config_error("gz engine requires the metric jet 'w'");
        if (int(cfg.w.size()) - 1 < 2 * cfg.k + 3)
            throw config_error("gz engine needs the jet truncated at order >= 2k+3");
    } else if (cfg.engine == "normalform") {
        if (cfg.M < 1) throw config_error("normalform engine requires M >= 1");
        if (!cfg.has_wjet) throw config_error("normalform engine requires 'wjet'");
        if (cfg.omega0.empty() || cfg.omega0.size() % 2 == 0)
            throw config_error("normalform engine requires an odd-length 'omega0' row");
    } else if (cfg.engine == "modes") {
        if (!cfg.has_l_range) throw config_error("modes engine requires 'l_range'");
        if (cfg.lambdas.empty()) throw config_error("modes engine requires 'lambda' samples");
    } else if (cfg.engine == "resonances") {
        if (!cfg.has_l_range) throw config_error("resonances engine requires 'l_range'");
        if (!cfg.has_region) throw config_error("resonances engine requires 'region'");
    } else if (cfg.engine == "accumulate") {
        if (!cfg.has_l_range) throw config_error("accumulate engine requires 'l_range'");
        if (!(cfg.c > 0)) throw config_error("accumulate engine requires c > 0");
        if (2 * cfg.k == cfg.n - 1)
            throw config_error("accumulate engine requires 2k != n-1");
    } else if (cfg.engine != "verify") {
        throw config_error("unknown engine: " + cfg.engine);
    }
    return cfg;
}

// Integration/certification tolerances derived from a configuration: the
// double-tier target is taken verbatim and the refined tiers keep their
// default headroom relative to it.
inline ConnTols conn_tols_from(const ToleranceConfig& t) {
    ConnTols c;
    double f = t.ode_rtol / 1e-13;
    c.ode_rtol[0] = t.ode_rtol;
    c.ode_rtol[1] = 5e-19 * f;
    c.ode_rtol[2] = 1e-23 * f;
    c.lattice_guard = t.lattice_guard;
    c.wronskian_tol = t.wronskian_tol;
    return c;
}

// ---------------------------------------------------------------------------
// SVG scatter plot
// ---------------------------------------------------------------------------

struct SvgPoint {
    double x = 0.0, y = 0.0;
};

// Minimal self-contained scatter: dots for data, crosses for reference marks,
// a frame with corner coordinates, and a title.  Formatting is fixed so equal
// inputs produce identical bytes.
inline std::string svg_scatter(const std::vector<SvgPoint>& dots,
                               const std::vector<SvgPoint>& marks, const std::string& title) {
    const double W = 720, H = 540, m = 64;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    auto absorb = [&](const SvgPoint& p) {
        if (first) {
            x0 = x1 = p.x;
            y0 = y1 = p.y;
            first = false;
            return;
        }
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    };
    for (const SvgPoint& p : dots) absorb(p);
    for (const SvgPoint& p : marks) absorb(p);
    double dx = x1 - x0, dy = y1 - y0;
    if (!(dx > 0)) dx = (x0 == 0 ? 1.0 : std::abs(x0));
    if (!(dy > 0)) dy = (y0 == 0 ? 1.0 : std::abs(y0));
    x0 -= 0.08 * dx;
    x1 += 0.08 * dx;
    y0 -= 0.08 * dy;
    y1 += 0.08 * dy;

    auto px = [&](double x) { return m + (x - x0) / (x1 - x0) * (W - 2 * m); };
    auto py = [&](double y) { return H - m - (y - y0) / (y1 - y0) * (H - 2 * m); };
    auto num = [](double v) {
        char b[40];
        std::snprintf(b, sizeof b, "%.6g", v);
        return std::string(b);
    };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"540\" "
         "viewBox=\"0 0 720 540\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"720\" height=\"540\" fill=\"#ffffff\"/>\n";
    s += "<rect x=\"" + num(m) + "\" y=\"" + num(m) + "\" width=\"" + num(W - 2 * m) +
         "\" height=\"" + num(H - 2 * m) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
    s += "<text x=\"" + num(W / 2) + "\" y=\"36\" font-family=\"monospace\" font-size=\"16\" "
         "text-anchor=\"middle\" fill=\"#111111\">" +
         title + "</text>\n";
    s += "<text x=\"" + num(m) + "\" y=\"" + num(H - m + 20) +
         "\" font-family=\"monospace\" font-size=\"11\" fill=\"#333333\">" + num(x0) +
         "</text>\n";
    s += "<text x=\"" + num(W - m) + "\" y=\"" + num(H - m + 20) +
         "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\" fill=\"#333333\">" +
         num(x1) + "</text>\n";
    s += "<text x=\"" + num(m - 6) + "\" y=\"" + num(H - m) +
         "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\" fill=\"#333333\">" +
         num(y0) + "</text>\n";
    s += "<text x=\"" + num(m - 6) + "\" y=\"" + num(m + 4) +
         "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\" fill=\"#333333\">" +
         num(y1) + "</text>\n";
    for (const SvgPoint& p : dots)
        s += "<circle cx=\"" + num(px(p.x)) + "\" cy=\"" + num(py(p.y)) +
             "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    for (const SvgPoint& p : marks) {
        double cx = px(p.x), cy = py(p.y);
        s += "<path d=\"M " + num(cx - 5) + " " + num(cy - 5) + " L " + num(cx + 5) + " " +
             num(cy + 5) + " M " + num(cx - 5) + " " + num(cy + 5) + " L " + num(cx + 5) + " " +
             num(cy - 5) + "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace ahres
