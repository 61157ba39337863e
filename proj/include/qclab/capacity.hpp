#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qclab/beltrami.hpp"
#include "qclab/geometry.hpp"

namespace qclab {

// Ring condenser: open outer disk A and closed inner disk C with
// closure(C) strictly inside A.
struct RingCondenser {
    Disk outer;
    Disk inner;

    RingCondenser(Disk a, Disk c);
    bool concentric(double tol = 1e-12) const {
        return same_point(outer.center, inner.center, tol);
    }
    // width of the narrowest passage between the two boundary circles
    double min_gap() const {
        return outer.radius - (distance(outer.center, inner.center) + inner.radius);
    }
};

struct GridSpec {
    int cells_per_axis = 256;
    double solver_tolerance = 1e-8;
    int max_iterations = 50000;

    void validate() const;
};

struct CapacityEstimate {
    double value = 0.0;
    GridSpec grid;
    double residual = 0.0;
    int iterations = 0;
    std::optional<double> analytic_baseline;
};

// 2*pi / log(r2/r1): capacity of the concentric round ring condenser with
// boundary radii r1 < r2, equal to the modulus of the curve family joining
// the two boundary circles through the ring.
double annulus_ring_modulus(double r1, double r2);

// 4*pi / log(area_outer/area_inner): area lower bound for the capacity of
// any condenser. Coincides with annulus_ring_modulus on round rings.
double capacity_lower_bound(double area_outer, double area_inner);

// Discrete Dirichlet energy minimization on a uniform Cartesian grid over
// the square circumscribing the outer disk. Cells are classified by their
// center: u = 1 on the inner disk, u = 0 outside the outer disk, free in
// between; the 5-point energy is minimized by conjugate gradients to the
// requested residual. Center classification pushes both boundary conditions
// about half a cell outward/inward, so on round rings the estimate
// approaches the true capacity from below, with an O(h) gap; the report
// records the resolution for convergence studies.
CapacityEstimate capacity_dirichlet(const RingCondenser& e, const GridSpec& g);

// Solver-versus-analytic-modulus comparison on concentric round rings across
// a refinement ladder (cells/4, cells/2, cells).
struct ConsistencyRow {
    int cells;
    double estimate;
    double baseline;
    double rel_gap;
    double residual;
};

struct ConsistencyReport {
    std::vector<ConsistencyRow> rows;
    bool gaps_shrink = false;  // relative gap decreases along the ladder
};

ConsistencyReport capacity_modulus_consistency(const RingCondenser& e, const GridSpec& g);

// Image of a concentric ring condenser under a radial stretching centered at
// the same point: the concentric ring condenser with radii rho(r).
RingCondenser condenser_image(const RingCondenser& e, const RadialMap& f);

// Cell classification as text, one row per grid line: '#' fixed at 1,
// '.' free, ' ' fixed at 0.
std::string mask_bitmap(const RingCondenser& e, const GridSpec& g);

}  // namespace qclab
