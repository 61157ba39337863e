#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qclab/capacity.hpp"
#include "qclab/csv.hpp"
#include "qclab/errors.hpp"
#include "qclab/kernels.hpp"
#include "qclab/scenario.hpp"

namespace {

struct CliOptions {
    std::string config;
    std::string out_dir;
    std::string fixture;
    std::string field;
    std::string grid;
    std::string ring;
    std::string z0;
    std::string dump_mask;
    int cells = 0;
    unsigned long long seed = 0;
    bool have_seed = false;
    bool parallel = false;
};

qclab::Scenario adhoc_scenario(const std::string& kind, const CliOptions& opt) {
    qclab::Scenario s;
    s.kind = kind;
    s.name = kind;
    if (!opt.fixture.empty()) s.fixture = opt.fixture;
    if (!opt.field.empty()) s.field = opt.field;
    if (!opt.grid.empty()) s.radius_grid = qclab::parse_radius_grid(opt.grid);
    if (!opt.ring.empty()) {
        const std::size_t colon = opt.ring.find(':');
        if (colon == std::string::npos)
            throw qclab::ConfigError("--ring expects r1:r2, got '" + opt.ring + "'");
        s.ring_r1 = std::stod(opt.ring.substr(0, colon));
        s.ring_r2 = std::stod(opt.ring.substr(colon + 1));
        s.ring_set = true;
    }
    if (!opt.z0.empty()) {
        const std::size_t comma = opt.z0.find(',');
        if (comma == std::string::npos)
            throw qclab::ConfigError("--z0 expects x,y, got '" + opt.z0 + "'");
        s.z0 = {std::stod(opt.z0.substr(0, comma)), std::stod(opt.z0.substr(comma + 1))};
    }
    if (opt.cells > 0) s.cells = opt.cells;
    if (opt.have_seed) s.seed = opt.seed;
    return s;
}

std::vector<qclab::Scenario> plan(const std::string& kind, const CliOptions& opt) {
    if (!opt.config.empty()) {
        std::vector<qclab::Scenario> list;
        for (const qclab::ConfigSection& section : qclab::parse_config_file(opt.config)) {
            qclab::Scenario s = qclab::scenario_from_section(section);
            if (kind == "all" || s.kind == kind) list.push_back(std::move(s));
        }
        if (list.empty())
            throw qclab::ConfigError("config '" + opt.config + "' has no scenario of kind '" +
                                     kind + "'");
        return list;
    }
    if (kind == "all") {
        std::vector<qclab::Scenario> list = qclab::default_suite();
        if (opt.have_seed) {
            for (qclab::Scenario& s : list) s.seed = opt.seed;
        }
        return list;
    }
    return {adhoc_scenario(kind, opt)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Growth diagnostics for plane homeomorphisms with unbounded distortion: "
                 "ring capacities, dispersion bounds, and circle-growth sweeps"};
    app.require_subcommand(1);
    app.fallthrough(true);

    CliOptions opt;
    if (const char* env = std::getenv("QCLAB_OUT")) opt.out_dir = env;
    app.add_option("--config", opt.config, "scenario configuration file");
    app.add_option("--out", opt.out_dir, "output directory for CSV/SVG artifacts");
    app.add_option("--fixture", opt.fixture, "map fixture: identity, power:K, log, or a "
                                             "profile table path");
    app.add_option("--field", opt.field, "scalar field: from-map, const:c, logplus, absz");
    app.add_option("--grid", opt.grid, "radius grid start:end:count (log exponents)");
    app.add_option("--ring", opt.ring, "ring radii r1:r2");
    app.add_option("--z0", opt.z0, "analysis center x,y");
    app.add_option("--cells", opt.cells, "solver cells per axis");
    auto* seed_opt = app.add_option("--seed", opt.seed, "seed for residual sample points");
    app.add_flag("--parallel", opt.parallel, "run scenarios concurrently");
    app.add_option("--dump-mask", opt.dump_mask,
                   "write the capacity solver cell classification to this file");

    for (const char* name : {"dispersion", "lemma2", "capacity", "ringq", "growth", "all"}) {
        app.add_subcommand(name)->silent(false);
    }

    CLI11_PARSE(app, argc, argv);
    opt.have_seed = seed_opt->count() > 0;
    const std::string kind = app.get_subcommands().front()->get_name();

    try {
        if (!opt.dump_mask.empty() && kind == "capacity") {
            const qclab::Scenario s = adhoc_scenario(kind, opt);
            qclab::GridSpec g;
            g.cells_per_axis = s.cells;
            const qclab::RingCondenser ring(qclab::Disk(s.z0, s.ring_r2),
                                            qclab::Disk(s.z0, s.ring_r1));
            qclab::write_text_atomic(opt.dump_mask, qclab::mask_bitmap(ring, g));
            std::cout << "mask written to " << opt.dump_mask << "\n";
        }

        const std::vector<qclab::Scenario> scenarios = plan(kind, opt);
        const std::vector<qclab::RunSummary> summaries =
            qclab::run_scenarios(scenarios, opt.out_dir, opt.parallel);

        int checks = 0, failures = 0;
        for (const qclab::RunSummary& summary : summaries) {
            std::cout << summary.line() << "\n";
            checks += summary.checks;
            failures += summary.checks - summary.passes;
            for (const std::string& label : summary.failures) {
                std::cout << "  violated: " << label << "\n";
            }
        }
        std::cout << (failures == 0 ? "PASS" : "FAIL") << ": " << checks - failures << "/"
                  << checks << " checks passed, " << summaries.size() << " scenario(s), "
                  << "kernels=" << qclab::kernels::active_backend() << "\n";
        return failures == 0 ? 0 : 1;
    } catch (const qclab::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}
