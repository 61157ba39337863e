#include "qclab/scenario.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <thread>

#include "qclab/beltrami.hpp"
#include "qclab/csv.hpp"
#include "qclab/errors.hpp"
#include "qclab/ringq.hpp"
#include "qclab/svg.hpp"

namespace qclab {

namespace {

constexpr double kE = 2.718281828459045;

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(what + ": cannot parse number '" + text + "'");
}

int parse_int(const std::string& text, const std::string& what) {
    const double v = parse_double(text, what);
    const int i = static_cast<int>(v);
    if (i != v) throw ConfigError(what + ": expected an integer, got '" + text + "'");
    return i;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

bool looks_like_path(const std::string& fixture) {
    return fixture.find('/') != std::string::npos ||
           fixture.find(".txt") != std::string::npos ||
           fixture.find(".tsv") != std::string::npos;
}

RadialMap resolve_fixture(const Scenario& s) {
    if (looks_like_path(s.fixture)) return map_from_table_file(s.fixture, s.z0);
    return fixture_by_name(s.fixture, s.z0);
}

ScalarField resolve_field(const Scenario& s) {
    if (s.field == "from-map") return dilatation_field(resolve_fixture(s));
    if (s.field == "logplus") return log_plus_field(s.z0);
    if (s.field == "absz") return abs_field(s.z0);
    if (s.field.rfind("const:", 0) == 0) {
        const double c = parse_double(s.field.substr(6), "field const");
        if (c < 0.0) throw ConfigError("field const: value must be >= 0");
        return ScalarField::constant(c);
    }
    throw ConfigError("scenario '" + s.name + "': unknown field '" + s.field +
                      "' (expected from-map, const:c, logplus, absz)");
}

std::vector<double> sweep_radii(const Scenario& s, const std::vector<double>& fallback) {
    return s.radius_grid.set() ? s.radius_grid.radii() : fallback;
}

std::string artifact_path(const std::string& out_dir, const std::string& file) {
    return out_dir.empty() ? file : out_dir + "/" + file;
}

void emit(RunSummary& summary, const std::string& out_dir, const std::string& file,
          const std::string& content) {
    const std::string path = artifact_path(out_dir, file);
    write_text_atomic(path, content);
    summary.artifacts.push_back(path);
}

void record(RunSummary& summary, bool pass, const std::string& label) {
    ++summary.checks;
    if (pass) {
        ++summary.passes;
    } else {
        summary.failures.push_back(label);
    }
}

std::string radius_tag(double R) {
    std::ostringstream os;
    os << "R=" << format_sig12(R);
    return os.str();
}

// ---- per-kind runners ----------------------------------------------------

void run_dispersion(const Scenario& s, RunSummary& summary, const std::string& out_dir) {
    const ScalarField phi = resolve_field(s);
    const std::vector<double> radii = sweep_radii(s, default_dispersion_grid());
    const DispersionReport rep = dispersion_sup(phi, s.z0, radii, s.quadrature);

    CsvTable t;
    t.header = {"R", "mean", "deviation"};
    for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        t.rows.push_back({rep.radii[i], rep.means[i], rep.deviations[i]});
    }
    emit(summary, out_dir, s.out_csv.empty() ? s.name + ".csv" : s.out_csv, to_csv(t));

    PlotSeries dev{"mean deviation", rep.radii, rep.deviations};
    PlotOptions opt;
    opt.title = "Dispersion of " + s.field + " about (" + format_sig12(s.z0.x) + "," +
                format_sig12(s.z0.y) + ")";
    opt.x_label = "R";
    opt.y_label = "mean deviation";
    opt.log_x = true;
    emit(summary, out_dir, s.out_svg.empty() ? s.name + ".svg" : s.out_svg,
         render_svg_plot({dev}, opt));

    record(summary, rep.stabilizing, "dispersion-not-stabilizing");
}

void run_lemma2(const Scenario& s, RunSummary& summary, const std::string& out_dir) {
    const ScalarField phi = resolve_field(s);
    const std::vector<double> radii = sweep_radii(s, default_dispersion_grid());
    const DispersionBoundReport rep = dispersion_bound_check(phi, s.z0, radii, s.quadrature);

    CsvTable t;
    t.header = {"R", "mean", "deviation", "lhs", "bound", "margin", "pass"};
    std::vector<double> margins;
    for (const BoundRow& row : rep.rows) {
        t.rows.push_back({row.R, row.mean, row.deviation, row.lhs, row.bound, row.margin,
                          row.pass ? 1.0 : 0.0});
        margins.push_back(row.margin);
        record(summary, row.pass, "tail-bound at " + radius_tag(row.R));
    }
    emit(summary, out_dir, s.out_csv.empty() ? s.name + ".csv" : s.out_csv, to_csv(t));

    PlotSeries mg{"bound - integral", rep.dispersion.radii, margins};
    PlotOptions opt;
    opt.title = "Tail bound margin, field " + s.field;
    opt.x_label = "R";
    opt.y_label = "margin";
    opt.log_x = true;
    opt.zero_line = true;
    emit(summary, out_dir, s.out_svg.empty() ? s.name + ".svg" : s.out_svg,
         render_svg_plot({mg}, opt));
}

void run_capacity(const Scenario& s, RunSummary& summary, const std::string& out_dir) {
    if (!(0.0 < s.ring_r1 && s.ring_r1 < s.ring_r2))
        throw ConfigError("scenario '" + s.name + "': ring requires 0 < r1 < r2");
    const RingCondenser ring(Disk(s.z0, s.ring_r2), Disk(s.z0, s.ring_r1));
    GridSpec g = s.solver;
    g.cells_per_axis = s.cells;
    const ConsistencyReport rep = capacity_modulus_consistency(ring, g);
    const double lower =
        capacity_lower_bound(ring.outer.area(), ring.inner.area());

    CsvTable t;
    t.header = {"r_C", "r_A", "cells", "estimate", "baseline", "lower_bound", "residual"};
    std::vector<double> xs, est, base;
    for (const ConsistencyRow& row : rep.rows) {
        t.rows.push_back({s.ring_r1, s.ring_r2, static_cast<double>(row.cells),
                          row.estimate, row.baseline, lower, row.residual});
        xs.push_back(row.cells);
        est.push_back(row.estimate);
        base.push_back(row.baseline);
    }
    emit(summary, out_dir, s.out_csv.empty() ? s.name + ".csv" : s.out_csv, to_csv(t));

    // bound and identity judged at the configured resolution; coarser rungs
    // only document the trend
    const ConsistencyRow& finest = rep.rows.back();
    record(summary, finest.estimate >= lower - 0.02 * finest.estimate,
           "area-lower at cells=" + std::to_string(finest.cells));

    PlotOptions opt;
    opt.title = "Ring capacity vs. grid resolution";
    opt.x_label = "cells per axis";
    opt.y_label = "capacity";
    emit(summary, out_dir, s.out_svg.empty() ? s.name + ".svg" : s.out_svg,
         render_svg_plot({{"grid estimate", xs, est}, {"round-ring value", xs, base}}, opt));

    record(summary, rep.gaps_shrink, "refinement-monotone");
    record(summary, rep.rows.back().rel_gap <= 0.02, "modulus-agreement");
}

void run_ringq(const Scenario& s, RunSummary& summary, const std::string& out_dir) {
    const RadialMap map = resolve_fixture(s);
    std::vector<std::pair<double, double>> rings;
    if (s.ring_set) {
        rings.emplace_back(s.ring_r1, s.ring_r2);
    } else {
        rings.emplace_back(1.0, kE);
        rings.emplace_back(kE, std::exp(3.0));
    }

    CsvTable t;
    t.header = {"r1", "r2", "eta", "lhs", "rhs", "margin", "pass"};
    for (const auto& [r1, r2] : rings) {
        std::vector<RadialTestFunction> etas{eta_uniform(r1, r2), eta_reciprocal(r1, r2)};
        if (std::abs(r1 - kE) < 1e-9 && r2 > 15.2) etas.push_back(eta_log_weight(r2));
        const auto reports = ring_inequality_check(map, r1, r2, etas, s.quadrature);
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const RingQReport& rep = reports[i];
            t.rows.push_back({rep.r1, rep.r2, static_cast<double>(i), rep.lhs_modulus,
                              rep.rhs_integral, rep.margin, rep.pass ? 1.0 : 0.0});
            std::ostringstream label;
            label << "ring-" << rep.eta_label << " at (" << format_sig12(r1) << ","
                  << format_sig12(r2) << ")";
            record(summary, rep.pass, label.str());
        }
    }
    emit(summary, out_dir, s.out_csv.empty() ? s.name + ".csv" : s.out_csv, to_csv(t));
}

void run_growth(const Scenario& s, RunSummary& summary, const std::string& out_dir) {
    const RadialMap map = resolve_fixture(s);
    const ScalarField K = resolve_field(s);
    const DilatationContext ctx =
        dilatation_context(K, s.z0, default_dispersion_grid(), s.quadrature);
    std::vector<double> radii = s.radius_grid.set()
                                    ? s.radius_grid.radii()
                                    : log_spaced_radii(kE + 0.1, 30.0, 24);
    const GrowthReport rep = growth_report(map, ctx, radii, s.quadrature);

    CsvTable t;
    t.header = {"R",          "max_on_circle", "ratio",      "cap",
                "energy_rhs", "cap_bound",     "area_bound", "growth_floor",
                "pass"};
    std::vector<double> xs, ratios;
    for (const GrowthRow& row : rep.rows) {
        const ChainDiagnostics& chain = row.chain;
        t.rows.push_back({row.R, row.max_on_circle, row.ratio, chain.cap_image,
                          chain.check("modulus-upper").rhs,
                          chain.check("dispersion-upper").rhs,
                          chain.check("area-lower").lhs,
                          chain.check("circle-growth").rhs, chain.pass ? 1.0 : 0.0});
        xs.push_back(row.R);
        ratios.push_back(row.ratio);
        for (const ChainCheck& c : chain.checks) {
            record(summary, c.pass, c.label + " at " + radius_tag(row.R));
        }
    }
    emit(summary, out_dir, s.out_csv.empty() ? s.name + ".csv" : s.out_csv, to_csv(t));

    PlotSeries ratio_series{"max / (log R)^(2pi/C)", xs, ratios};
    PlotSeries floor_series{"circle-e minimum", xs,
                            std::vector<double>(xs.size(), rep.l_f)};
    PlotOptions opt;
    opt.title = "Growth ratio, fixture " + s.fixture;
    opt.x_label = "R";
    opt.y_label = "ratio";
    opt.log_x = true;
    emit(summary, out_dir, s.out_svg.empty() ? s.name + ".svg" : s.out_svg,
         render_svg_plot({ratio_series, floor_series}, opt));

    record(summary, rep.liminf_proxy >= rep.l_f - 1e-6, "liminf-proxy");

    // witness that the fixture actually solves its first-order system
    if (!looks_like_path(s.fixture)) {
        const double h = 1e-5;
        const auto samples = sample_annulus_points(map, 0.5, 10.0, 100, s.seed, 4.0 * h);
        const double res = beltrami_residual(map, mu_from_radial_map(map), samples, h);
        record(summary, res < 1e-5, "residual-witness");
    }
}

}  // namespace

std::vector<double> RadiusGridSpec::radii() const {
    if (!set()) throw ConfigError("radius grid not configured");
    if (!(exp_lo > kE))
        throw ConfigError("radius grid: start exponent must exceed e so radii exceed e^e");
    return log_spaced_radii(exp_lo, exp_hi, count);
}

RadiusGridSpec parse_radius_grid(const std::string& text) {
    const std::vector<std::string> parts = split(text, ':');
    if (parts.size() != 3)
        throw ConfigError("grid: expected start:end:count, got '" + text + "'");
    RadiusGridSpec g;
    g.exp_lo = parse_double(parts[0], "grid start");
    g.exp_hi = parse_double(parts[1], "grid end");
    g.count = parse_int(parts[2], "grid count");
    if (g.count < 2) throw ConfigError("grid: count must be >= 2");
    if (!(g.exp_lo < g.exp_hi)) throw ConfigError("grid: start must be below end");
    if (!(g.exp_lo > kE))
        throw ConfigError("grid: start exponent must exceed e (radii above e^e)");
    return g;
}

std::string RunSummary::line() const {
    std::ostringstream os;
    os << (ok() ? "[ OK ]" : "[FAIL]") << " " << name << " (" << kind << "): checks="
       << checks << " passes=" << passes << " failures=" << checks - passes << " time="
       << format_sig12(wall_seconds) << "s";
    return os.str();
}

Scenario scenario_from_section(const ConfigSection& section) {
    Scenario s;
    s.name = section.name;
    static const char* known[] = {"kind", "fixture", "field",  "z0",    "grid",
                                  "ring", "cells",   "panels", "nodes", "angular",
                                  "seed", "out_csv", "out_svg"};
    for (const auto& [key, value] : section.entries) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok)
            throw ConfigError("scenario '" + section.name + "': unknown key '" + key + "'");
    }
    s.kind = section.get("kind");
    if (s.kind != "dispersion" && s.kind != "lemma2" && s.kind != "capacity" &&
        s.kind != "ringq" && s.kind != "growth")
        throw ConfigError("scenario '" + section.name + "': unknown kind '" + s.kind + "'");
    s.fixture = section.get_or("fixture", s.fixture);
    s.field = section.get_or("field", s.field);
    if (section.has("z0")) {
        const auto parts = split(section.get("z0"), ',');
        if (parts.size() != 2)
            throw ConfigError("scenario '" + section.name + "': z0 must be 'x,y'");
        s.z0 = {parse_double(parts[0], "z0.x"), parse_double(parts[1], "z0.y")};
    }
    if (section.has("grid")) s.radius_grid = parse_radius_grid(section.get("grid"));
    if (section.has("ring")) {
        const auto parts = split(section.get("ring"), ':');
        if (parts.size() != 2)
            throw ConfigError("scenario '" + section.name + "': ring must be 'r1:r2'");
        s.ring_r1 = parse_double(parts[0], "ring r1");
        s.ring_r2 = parse_double(parts[1], "ring r2");
        s.ring_set = true;
    }
    if (section.has("cells")) s.cells = parse_int(section.get("cells"), "cells");
    if (section.has("panels"))
        s.quadrature.radial_panels = parse_int(section.get("panels"), "panels");
    if (section.has("nodes"))
        s.quadrature.nodes_per_panel = parse_int(section.get("nodes"), "nodes");
    if (section.has("angular"))
        s.quadrature.angular_nodes = parse_int(section.get("angular"), "angular");
    if (section.has("seed"))
        s.seed = static_cast<unsigned long long>(parse_double(section.get("seed"), "seed"));
    s.out_csv = section.get_or("out_csv", "");
    s.out_svg = section.get_or("out_svg", "");
    return s;
}

std::vector<Scenario> default_suite() {
    std::vector<Scenario> list;

    Scenario dispersion;
    dispersion.name = "dispersion-logplus";
    dispersion.kind = "dispersion";
    dispersion.field = "logplus";
    list.push_back(dispersion);

    Scenario bound_const;
    bound_const.name = "lemma2-const";
    bound_const.kind = "lemma2";
    bound_const.field = "const:1";
    bound_const.radius_grid = parse_radius_grid("2.72:10:12");
    list.push_back(bound_const);

    Scenario bound_log;
    bound_log.name = "lemma2-logplus";
    bound_log.kind = "lemma2";
    bound_log.field = "logplus";
    bound_log.radius_grid = parse_radius_grid("2.728:10:13");
    list.push_back(bound_log);

    Scenario cap;
    cap.name = "capacity-unit-e";
    cap.kind = "capacity";
    cap.ring_r1 = 1.0;
    cap.ring_r2 = kE;
    cap.cells = 256;
    list.push_back(cap);

    for (const char* fixture : {"power:2", "log"}) {
        Scenario rq;
        rq.name = std::string("ringq-") + (fixture[0] == 'p' ? "power2" : "log");
        rq.kind = "ringq";
        rq.fixture = fixture;
        list.push_back(rq);

        Scenario gr;
        gr.name = std::string("growth-") + (fixture[0] == 'p' ? "power2" : "log");
        gr.kind = "growth";
        gr.fixture = fixture;
        gr.radius_grid = fixture[0] == 'p' ? parse_radius_grid("3.72:40:24")
                                           : parse_radius_grid("2.82:30:24");
        list.push_back(gr);
    }
    return list;
}

RunSummary run_scenario(const Scenario& s, const std::string& out_dir) {
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    RunSummary summary;
    summary.name = s.name;
    summary.kind = s.kind;
    const auto start = std::chrono::steady_clock::now();
    if (s.kind == "dispersion") {
        run_dispersion(s, summary, out_dir);
    } else if (s.kind == "lemma2") {
        run_lemma2(s, summary, out_dir);
    } else if (s.kind == "capacity") {
        run_capacity(s, summary, out_dir);
    } else if (s.kind == "ringq") {
        run_ringq(s, summary, out_dir);
    } else if (s.kind == "growth") {
        run_growth(s, summary, out_dir);
    } else {
        throw ConfigError("scenario '" + s.name + "': unknown kind '" + s.kind + "'");
    }
    summary.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

std::vector<RunSummary> run_scenarios(const std::vector<Scenario>& list,
                                      const std::string& out_dir, bool parallel) {
    std::vector<RunSummary> summaries(list.size());
    if (!parallel || list.size() < 2) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            summaries[i] = run_scenario(list[i], out_dir);
        }
        return summaries;
    }
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(list.size());
    workers.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        workers.emplace_back([&, i] {
            try {
                summaries[i] = run_scenario(list[i], out_dir);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        });
    }
    for (std::thread& w : workers) w.join();
    for (const std::exception_ptr& err : errors) {
        if (err) std::rethrow_exception(err);
    }
    return summaries;
}

}  // namespace qclab
