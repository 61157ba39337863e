#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qclab/capacity.hpp"
#include "qclab/errors.hpp"
#include "support.hpp"

using namespace qclab;
using testsupport::close_rel;

namespace {
const double kE = std::exp(1.0);

RingCondenser concentric(double r_in, double r_out, PlanePoint c = {0, 0}) {
    return RingCondenser(Disk(c, r_out), Disk(c, r_in));
}
}  // namespace

TEST_CASE("round ring modulus") {
    CHECK(annulus_ring_modulus(1.0, kE) == doctest::Approx(2.0 * M_PI).epsilon(1e-15));
    CHECK(annulus_ring_modulus(1.0, kE * kE) == doctest::Approx(M_PI).epsilon(1e-15));
    // depends on the ratio only
    testsupport::Uniform u(5);
    for (int i = 0; i < 20; ++i) {
        const double r = u.in(0.01, 50.0);
        const double t = u.in(1.01, 40.0);
        CHECK(testsupport::close_abs(annulus_ring_modulus(r, r * t),
                                     annulus_ring_modulus(1.0, t), 1e-12));
    }
    CHECK_THROWS_AS(annulus_ring_modulus(2.0, 1.0), ValidationError);
    CHECK_THROWS_AS(annulus_ring_modulus(0.0, 1.0), ValidationError);
}

TEST_CASE("reciprocal modulus is additive over nested rings") {
    testsupport::Uniform u(6);
    for (int i = 0; i < 20; ++i) {
        const double r1 = u.in(0.1, 2.0);
        const double r2 = r1 * u.in(1.1, 5.0);
        const double r3 = r2 * u.in(1.1, 5.0);
        const double lhs = 1.0 / annulus_ring_modulus(r1, r3);
        const double rhs =
            1.0 / annulus_ring_modulus(r1, r2) + 1.0 / annulus_ring_modulus(r2, r3);
        CHECK(testsupport::close_abs(lhs, rhs, 1e-12));
    }
}

TEST_CASE("area lower bound") {
    CHECK(capacity_lower_bound(M_PI * kE * kE, M_PI) ==
          doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(capacity_lower_bound(M_PI * std::pow(kE, 4.0), M_PI) ==
          doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(capacity_lower_bound(4.0 * M_PI, M_PI) ==
          doctest::Approx(9.06472028365).epsilon(1e-11));
    CHECK_THROWS_AS(capacity_lower_bound(1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(capacity_lower_bound(1.0, 2.0), ValidationError);

    // on round rings the bound coincides with the modulus
    testsupport::Uniform u(7);
    for (int i = 0; i < 20; ++i) {
        const double r = u.in(0.1, 3.0);
        const double R = r * u.in(1.2, 9.0);
        CHECK(testsupport::close_abs(capacity_lower_bound(M_PI * R * R, M_PI * r * r),
                                     annulus_ring_modulus(r, R), 1e-12));
    }
}

TEST_CASE("condenser validation") {
    CHECK_THROWS_AS(RingCondenser(Disk({0, 0}, 1.0), Disk({0, 0}, 1.0)), ValidationError);
    CHECK_THROWS_AS(RingCondenser(Disk({0, 0}, 2.0), Disk({1.5, 0}, 1.0)), ValidationError);
    const RingCondenser off(Disk({0, 0}, 2.0), Disk({0.5, 0}, 1.0));
    CHECK(off.min_gap() == doctest::Approx(0.5));
    CHECK_FALSE(off.concentric());
    CHECK(concentric(1.0, kE).concentric());
}

TEST_CASE("grid solver approaches the round ring value under refinement") {
    GridSpec g;
    g.cells_per_axis = 128;
    const CapacityEstimate e128 = capacity_dirichlet(concentric(1.0, kE), g);
    CHECK(e128.residual <= g.solver_tolerance);
    // half-cell boundary offsets bias the center-classified scheme low
    CHECK(e128.value < 2.0 * M_PI);
    CHECK(e128.value > 2.0 * M_PI * 0.90);

    g.cells_per_axis = 256;
    const CapacityEstimate e256 = capacity_dirichlet(concentric(1.0, kE), g);
    CHECK(std::abs(e256.value - 2.0 * M_PI) < std::abs(e128.value - 2.0 * M_PI));

    // area bound respected by the discrete estimate within the 2% slack
    const double lower = capacity_lower_bound(M_PI * kE * kE, M_PI);
    CHECK(e256.value >= lower - 0.02 * e256.value);
}

TEST_CASE("wider ring converges to pi at high resolution") {
    GridSpec g;
    g.cells_per_axis = 512;
    const CapacityEstimate est = capacity_dirichlet(concentric(1.0, kE * kE), g);
    CHECK(std::abs(est.value - M_PI) / M_PI < 0.02);
}

TEST_CASE("consistency ladder shrinks the modulus gap") {
    GridSpec g;
    g.cells_per_axis = 256;
    const ConsistencyReport rep = capacity_modulus_consistency(concentric(1.0, kE), g);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].cells == 64);
    CHECK(rep.rows[2].cells == 256);
    CHECK(rep.gaps_shrink);
    CHECK(rep.rows[2].rel_gap < 0.02);
    for (const ConsistencyRow& row : rep.rows) {
        CHECK(row.baseline == doctest::Approx(2.0 * M_PI));
        CHECK(row.rel_gap < 0.05);
    }
    CHECK_THROWS_AS(
        capacity_modulus_consistency(RingCondenser(Disk({0, 0}, 2.0), Disk({0.3, 0}, 1.0)), g),
        ValidationError);
}

TEST_CASE("off-center ring capacity exceeds the concentric value") {
    GridSpec g;
    g.cells_per_axis = 128;
    const CapacityEstimate centered = capacity_dirichlet(concentric(1.0, kE), g);
    const CapacityEstimate shifted =
        capacity_dirichlet(RingCondenser(Disk({0, 0}, kE), Disk({0.6, 0.0}, 1.0)), g);
    CHECK(shifted.value > centered.value);
}

TEST_CASE("solver guards") {
    GridSpec g;
    g.cells_per_axis = 16;
    CHECK_THROWS_AS(capacity_dirichlet(concentric(1.0, 1.05), g), ValidationError);

    g.cells_per_axis = 64;
    g.max_iterations = 2;
    CHECK_THROWS_AS(capacity_dirichlet(concentric(1.0, kE), g), SolverError);

    g = GridSpec{};
    g.cells_per_axis = 8;
    CHECK_THROWS_AS(g.validate(), ValidationError);
    g = GridSpec{};
    g.solver_tolerance = 0.0;
    CHECK_THROWS_AS(g.validate(), ValidationError);
}

TEST_CASE("images of concentric condensers under radial stretchings") {
    const RingCondenser base = concentric(1.0, std::exp(4.0));
    const RingCondenser same = condenser_image(base, identity_map());
    CHECK(same.inner.radius == doctest::Approx(1.0));
    CHECK(same.outer.radius == doctest::Approx(std::exp(4.0)));

    const RingCondenser sq = condenser_image(base, power_map(2.0));
    CHECK(sq.inner.radius == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sq.outer.radius == doctest::Approx(kE * kE).epsilon(1e-14));

    const RingCondenser lg = condenser_image(concentric(kE, std::exp(3.0)), log_map());
    CHECK(lg.inner.radius == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(lg.outer.radius == doctest::Approx(4.0).epsilon(1e-14));
    // nesting preserved for strictly increasing profiles
    CHECK(lg.inner.radius < lg.outer.radius);

    CHECK_THROWS_AS(
        condenser_image(RingCondenser(Disk({0, 0}, 2.0), Disk({0.2, 0}, 0.5)), log_map()),
        ValidationError);
    CHECK_THROWS_AS(condenser_image(base, power_map(2.0, {5.0, 0.0})), ValidationError);
}

TEST_CASE("mask bitmap sketches the three regions") {
    GridSpec g;
    g.cells_per_axis = 32;
    const std::string bitmap = mask_bitmap(concentric(1.0, kE), g);
    CHECK(std::count(bitmap.begin(), bitmap.end(), '\n') == 32);
    CHECK(bitmap.find('#') != std::string::npos);
    CHECK(bitmap.find('.') != std::string::npos);
    CHECK(bitmap.find(' ') != std::string::npos);
    // inner disk marker sits in the middle row
    const std::size_t row_start = (32 / 2) * 33;
    const std::string mid = bitmap.substr(row_start, 32);
    CHECK(mid.find('#') != std::string::npos);
}
