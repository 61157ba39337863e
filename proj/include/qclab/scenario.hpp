#pragma once

#include <string>
#include <vector>

#include "qclab/capacity.hpp"
#include "qclab/config.hpp"
#include "qclab/dispersion.hpp"
#include "qclab/quadrature.hpp"

namespace qclab {

// Sweep grid given as log-exponent range: radii e^lo .. e^hi, log-spaced.
struct RadiusGridSpec {
    double exp_lo = 0.0;
    double exp_hi = 0.0;
    int count = 0;
    bool set() const { return count > 0; }
    std::vector<double> radii() const;
};

RadiusGridSpec parse_radius_grid(const std::string& text);  // "lo:hi:count"

// One named run: which check to execute, against which fixture/field, where
// to put the artifacts. Defaults reproduce the built-in suite entries.
struct Scenario {
    std::string name;
    std::string kind;                // dispersion | lemma2 | capacity | ringq | growth
    std::string fixture = "log";     // identity | power:K | log | profile table path
    std::string field = "from-map";  // from-map | const:c | logplus | absz
    PlanePoint z0{0.0, 0.0};
    RadiusGridSpec radius_grid;
    double ring_r1 = 1.0;
    double ring_r2 = 2.718281828459045;
    bool ring_set = false;  // explicit ring narrows ringq to that single ring
    int cells = 256;
    QuadratureSpec quadrature;
    GridSpec solver;
    unsigned long long seed = 321987;
    std::string out_csv;  // empty => <name>.csv
    std::string out_svg;  // empty => <name>.svg (kinds with a plot)
};

struct RunSummary {
    std::string name;
    std::string kind;
    int checks = 0;
    int passes = 0;
    std::vector<std::string> failures;  // violated inequality labels
    double wall_seconds = 0.0;
    std::vector<std::string> artifacts;

    bool ok() const { return checks == passes; }
    std::string line() const;
};

Scenario scenario_from_section(const ConfigSection& section);

// The canonical end-to-end pipeline run by `all` when no config is given.
std::vector<Scenario> default_suite();

// Executes a scenario, writes its artifacts under out_dir, returns the
// summary. Throws ConfigError for unresolvable fixtures/fields.
RunSummary run_scenario(const Scenario& s, const std::string& out_dir);

// Runs scenarios sequentially or concurrently; summaries in input order.
std::vector<RunSummary> run_scenarios(const std::vector<Scenario>& list,
                                      const std::string& out_dir, bool parallel);

}  // namespace qclab
