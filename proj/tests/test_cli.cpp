#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qclab/config.hpp"
#include "qclab/csv.hpp"
#include "qclab/errors.hpp"
#include "qclab/scenario.hpp"
#include "qclab/svg.hpp"

namespace fs = std::filesystem;
using namespace qclab;

namespace {

const std::string kCli = QCLAB_CLI_PATH;
const std::string kTmp = QCLAB_TEST_TMPDIR;

int run_cli(const std::string& args) {
    fs::create_directories(kTmp);
    const std::string cmd = kCli + " " + args + " > " + kTmp + "/cli.log 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::vector<double>> parse_csv_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            std::size_t used = 0;
            const double v = std::stod(cell, &used);
            REQUIRE(used == cell.size());
            REQUIRE(std::isfinite(v));
            row.push_back(v);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("csv formatting") {
    CsvTable t;
    t.header = {"a", "b"};
    t.rows = {{1.0, 0.5}, {2.0, 1.0 / 3.0}};
    const std::string text = to_csv(t);
    CHECK(text == "a,b\n1,0.5\n2,0.333333333333\n");

    CsvTable empty;
    empty.header = {"a"};
    CHECK_THROWS_AS(to_csv(empty), ValidationError);

    CsvTable bad;
    bad.header = {"a"};
    bad.rows = {{std::numeric_limits<double>::infinity()}};
    CHECK_THROWS_AS(to_csv(bad), ValidationError);
}

TEST_CASE("svg rendering basics") {
    PlotSeries s{"ratio", {10.0, 100.0, 1000.0}, {2.0, 3.0, 4.0}};
    PlotSeries bound{"floor", {10.0, 100.0, 1000.0}, {2.0, 2.0, 2.0}};
    PlotOptions opt;
    opt.title = "demo";
    opt.log_x = true;
    opt.zero_line = true;
    const std::string svg = render_svg_plot({s, bound}, opt);
    CHECK(svg.find("<svg") == 0);
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 10);
    // both polylines and the legend entries render
    std::size_t polylines = 0, pos = 0;
    while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
        ++polylines;
        pos += 9;
    }
    CHECK(polylines == 2);
    CHECK(svg.find(">ratio<") != std::string::npos);
    CHECK(svg.find(">floor<") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);  // zero line

    CHECK_THROWS_AS(render_svg_plot({}, opt), ValidationError);
    PlotSeries ragged{"x", {1.0}, {}};
    CHECK_THROWS_AS(render_svg_plot({ragged}, opt), ValidationError);
}

TEST_CASE("config parsing") {
    std::istringstream text("[one]\nkind = lemma2\nfield = const:1\n"
                            "# comment\n[two]\nkind = growth\nfixture = log\n");
    const auto sections = parse_config(text, "inline");
    REQUIRE(sections.size() == 2);
    CHECK(sections[0].get("kind") == "lemma2");
    CHECK(sections[1].get_or("fixture", "?") == "log");

    std::istringstream bad1("kind = x\n");
    CHECK_THROWS_AS(parse_config(bad1, "inline"), ConfigError);
    std::istringstream bad2("[a\nkind = x\n");
    CHECK_THROWS_AS(parse_config(bad2, "inline"), ConfigError);
    std::istringstream bad3("[a]\nnonsense\n");
    CHECK_THROWS_AS(parse_config(bad3, "inline"), ConfigError);
    std::istringstream bad4("[a]\nkind = growth\n[a]\nkind = growth\n");
    CHECK_THROWS_AS(parse_config(bad4, "inline"), ConfigError);

    std::istringstream sect("[s]\nkind = capacity\nring = 1:2.5\ncells = 64\nz0 = 1,2\n");
    const Scenario s = scenario_from_section(parse_config(sect, "inline")[0]);
    CHECK(s.kind == "capacity");
    CHECK(s.ring_r2 == doctest::Approx(2.5));
    CHECK(s.cells == 64);
    CHECK(s.z0.x == doctest::Approx(1.0));

    std::istringstream unknown("[s]\nkind = capacity\ncellz = 2\n");
    CHECK_THROWS_AS(scenario_from_section(parse_config(unknown, "inline")[0]), ConfigError);
    std::istringstream badkind("[s]\nkind = volume\n");
    CHECK_THROWS_AS(scenario_from_section(parse_config(badkind, "inline")[0]), ConfigError);
    std::istringstream lowgrid("[s]\nkind = lemma2\ngrid = 1.0:9:5\n");
    CHECK_THROWS_AS(scenario_from_section(parse_config(lowgrid, "inline")[0]), ConfigError);
}

TEST_CASE("growth subcommand emits a passing sweep") {
    const std::string out = kTmp + "/growth";
    fs::remove_all(out);
    const int rc = run_cli("growth --fixture log --grid 2.82:30:24 --out " + out);
    CHECK(rc == 0);
    const std::string csv = slurp(out + "/growth.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 25);  // header + 24 rows
    const auto rows = parse_csv_rows(csv);
    REQUIRE(rows.size() == 24);
    for (const auto& row : rows) {
        CHECK(row[2] >= 2.0);   // ratio column stays above l_f = 2
        CHECK(row[8] == 1.0);   // chain pass flag
    }
    CHECK(slurp(out + "/growth.svg").find("<svg") == 0);
}

TEST_CASE("capacity subcommand compares solver and round-ring value") {
    const std::string out = kTmp + "/capacity";
    fs::remove_all(out);
    const int rc = run_cli("capacity --ring 1:2.71828 --cells 256 --out " + out);
    CHECK(rc == 0);
    const auto rows = parse_csv_rows(slurp(out + "/capacity.csv"));
    REQUIRE(rows.size() == 3);
    const double estimate = rows.back()[3], baseline = rows.back()[4];
    CHECK(std::abs(estimate - baseline) / baseline < 0.02);
}

TEST_CASE("lemma2 subcommand reports positive margins for a constant field") {
    const std::string out = kTmp + "/lemma2";
    fs::remove_all(out);
    const int rc = run_cli("lemma2 --field const:1 --grid 2.72:10:12 --out " + out);
    CHECK(rc == 0);
    const auto rows = parse_csv_rows(slurp(out + "/lemma2.csv"));
    REQUIRE(rows.size() == 12);
    for (const auto& row : rows) {
        CHECK(row[5] > 4.0);    // margin
        CHECK(row[6] == 1.0);   // pass
    }
}

TEST_CASE("ringq subcommand passes on the default rings") {
    const std::string out = kTmp + "/ringq";
    fs::remove_all(out);
    CHECK(run_cli("ringq --fixture power:2 --out " + out) == 0);
    const auto rows = parse_csv_rows(slurp(out + "/ringq.csv"));
    CHECK(rows.size() >= 4);
    for (const auto& row : rows) CHECK(row[6] == 1.0);
}

TEST_CASE("dispersion subcommand is deterministic byte for byte") {
    const std::string out1 = kTmp + "/disp1";
    const std::string out2 = kTmp + "/disp2";
    fs::remove_all(out1);
    fs::remove_all(out2);
    CHECK(run_cli("dispersion --field logplus --out " + out1) == 0);
    CHECK(run_cli("dispersion --field logplus --out " + out2) == 0);
    CHECK(slurp(out1 + "/dispersion.csv") == slurp(out2 + "/dispersion.csv"));
    CHECK(slurp(out1 + "/dispersion.svg") == slurp(out2 + "/dispersion.svg"));
}

TEST_CASE("dispersion flags a linearly growing field") {
    const std::string out = kTmp + "/disp-bad";
    fs::remove_all(out);
    CHECK(run_cli("dispersion --field absz --out " + out) == 1);
    const std::string log = slurp(kTmp + "/cli.log");
    CHECK(log.find("dispersion-not-stabilizing") != std::string::npos);
}

TEST_CASE("config driven run and error reporting") {
    fs::create_directories(kTmp);
    const std::string cfg = kTmp + "/suite.ini";
    {
        std::ofstream f(cfg);
        f << "[bound-check]\nkind = lemma2\nfield = const:2\ngrid = 2.72:8:6\n"
          << "[ring-power]\nkind = ringq\nfixture = power:2\nring = 1:2.718281828459045\n";
    }
    const std::string out = kTmp + "/config-run";
    fs::remove_all(out);
    CHECK(run_cli("all --config " + cfg + " --out " + out) == 0);
    CHECK(fs::exists(out + "/bound-check.csv"));
    CHECK(fs::exists(out + "/ring-power.csv"));
    // kind filter picks only matching scenarios
    CHECK(run_cli("lemma2 --config " + cfg + " --out " + out) == 0);
    // no scenario of a requested kind -> config error
    CHECK(run_cli("growth --config " + cfg + " --out " + out) == 2);

    const std::string bad = kTmp + "/bad.ini";
    {
        std::ofstream f(bad);
        f << "[x]\nkind = capacity\ncellz = 12\n";
    }
    CHECK(run_cli("capacity --config " + bad) == 2);
    const std::string log = slurp(kTmp + "/cli.log");
    CHECK(log.find("cellz") != std::string::npos);
}

TEST_CASE("parallel scenario execution matches sequential output") {
    fs::create_directories(kTmp);
    const std::string cfg = kTmp + "/par.ini";
    {
        std::ofstream f(cfg);
        f << "[b1]\nkind = lemma2\nfield = const:1\ngrid = 2.72:8:6\n"
          << "[b2]\nkind = lemma2\nfield = const:3\ngrid = 2.72:8:6\n"
          << "[b3]\nkind = dispersion\nfield = logplus\n";
    }
    const std::string seq = kTmp + "/seq";
    const std::string par = kTmp + "/par";
    fs::remove_all(seq);
    fs::remove_all(par);
    CHECK(run_cli("all --config " + cfg + " --out " + seq) == 0);
    CHECK(run_cli("all --config " + cfg + " --out " + par + " --parallel") == 0);
    for (const char* name : {"b1.csv", "b2.csv", "b3.csv"}) {
        CHECK(slurp(seq + "/" + name) == slurp(par + "/" + name));
    }
}

TEST_CASE("mask dump writes the classification bitmap") {
    fs::create_directories(kTmp);
    const std::string mask = kTmp + "/mask.txt";
    fs::remove(mask);
    const std::string out = kTmp + "/maskrun";
    CHECK(run_cli("capacity --ring 1:2.71828 --cells 256 --dump-mask " + mask + " --out " +
                  out) == 0);
    const std::string text = slurp(mask);
    CHECK(std::count(text.begin(), text.end(), '\n') == 256);
    CHECK(text.find('#') != std::string::npos);
}

TEST_CASE("QCLAB_OUT provides the default output directory") {
    const std::string out = kTmp + "/envout";
    fs::remove_all(out);
    fs::create_directories(kTmp);
    const std::string cmd = "QCLAB_OUT=" + out + " " + kCli +
                            " ringq --fixture power:2 > " + kTmp + "/cli.log 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(fs::exists(out + "/ringq.csv"));
}

TEST_CASE("tabulated profiles drive the ring check end to end") {
    fs::create_directories(kTmp);
    const std::string table = kTmp + "/log_profile.txt";
    {
        std::ofstream f(table);
        f << "# r rho rho_prime\n";
        for (int i = 0; i <= 400; ++i) {
            const double r = 0.3 * std::pow(30.0 / 0.3, i / 400.0);
            const double rho = r <= 1.0 ? r : 1.0 + std::log(r);
            const double drho = r <= 1.0 ? 1.0 : 1.0 / r;
            f << r << " " << rho << " " << drho << "\n";
        }
    }
    const std::string out = kTmp + "/table-run";
    fs::remove_all(out);
    CHECK(run_cli("ringq --fixture " + table + " --ring 1:2.718281828459045 --out " + out) ==
          0);
    const auto rows = parse_csv_rows(slurp(out + "/ringq.csv"));
    REQUIRE(rows.size() == 2);  // uniform and reciprocal weights
    for (const auto& row : rows) {
        CHECK(row[6] == 1.0);
        // interpolated log stretching stays near the closed-form modulus
        CHECK(row[3] == doctest::Approx(2.0 * M_PI / std::log(2.0)).epsilon(1e-4));
    }
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run_cli("growth --grid nonsense") == 2);
    CHECK(run_cli("growth --fixture spiral") == 2);
    CHECK(run_cli("capacity --ring 2:1") == 2);
}
