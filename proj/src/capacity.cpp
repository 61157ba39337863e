#include "qclab/capacity.hpp"

#include <cmath>
#include <sstream>

#include "qclab/errors.hpp"
#include "qclab/kernels.hpp"

namespace qclab {

RingCondenser::RingCondenser(Disk a, Disk c) : outer(a), inner(c) {
    if (!(inner.radius < outer.radius) || !(min_gap() > 0.0))
        throw ValidationError("RingCondenser: closure of the inner disk must lie inside "
                              "the outer disk");
}

void GridSpec::validate() const {
    if (cells_per_axis < 16) throw ValidationError("GridSpec: cells_per_axis must be >= 16");
    if (!(solver_tolerance > 0.0))
        throw ValidationError("GridSpec: solver_tolerance must be positive");
    if (max_iterations < 1) throw ValidationError("GridSpec: max_iterations must be >= 1");
}

double annulus_ring_modulus(double r1, double r2) {
    if (!(0.0 < r1 && r1 < r2 && std::isfinite(r2)))
        throw ValidationError("annulus_ring_modulus: requires 0 < r1 < r2 < inf");
    return 2.0 * M_PI / std::log(r2 / r1);
}

double capacity_lower_bound(double area_outer, double area_inner) {
    if (!(0.0 < area_inner && area_inner < area_outer))
        throw ValidationError("capacity_lower_bound: requires 0 < area_inner < area_outer");
    return 4.0 * M_PI / std::log(area_outer / area_inner);
}

namespace {

// 0 = fixed at zero (outside the outer disk), 1 = free, 2 = fixed at one
// (inner disk). Cell (i, j) has center at box corner + (i+0.5, j+0.5)*h.
struct CellGrid {
    int n;
    double h;
    double x0, y0;
    std::vector<char> kind;  // n*n, row-major

    char at(int i, int j) const { return kind[static_cast<std::size_t>(j) * n + i]; }
};

CellGrid classify_cells(const RingCondenser& e, const GridSpec& g) {
    const int n = g.cells_per_axis;
    CellGrid grid;
    grid.n = n;
    grid.h = 2.0 * e.outer.radius / n;
    grid.x0 = e.outer.center.x - e.outer.radius;
    grid.y0 = e.outer.center.y - e.outer.radius;
    grid.kind.assign(static_cast<std::size_t>(n) * n, 0);
    for (int j = 0; j < n; ++j) {
        const double y = grid.y0 + (j + 0.5) * grid.h;
        for (int i = 0; i < n; ++i) {
            const double x = grid.x0 + (i + 0.5) * grid.h;
            const double d_out = std::hypot(x - e.outer.center.x, y - e.outer.center.y);
            char k = 0;
            if (d_out < e.outer.radius) {
                const double d_in = std::hypot(x - e.inner.center.x, y - e.inner.center.y);
                k = d_in <= e.inner.radius ? 2 : 1;
            }
            grid.kind[static_cast<std::size_t>(j) * n + i] = k;
        }
    }
    return grid;
}

}  // namespace

CapacityEstimate capacity_dirichlet(const RingCondenser& e, const GridSpec& g) {
    g.validate();
    const CellGrid grid = classify_cells(e, g);
    const int n = grid.n;
    if (e.min_gap() < 8.0 * grid.h)
        throw ValidationError("capacity_dirichlet: grid under-resolves the gap (need >= 8 "
                              "cells across, have " +
                              std::to_string(e.min_gap() / grid.h) + ")");

    const std::size_t w = static_cast<std::size_t>(n) + 2;
    const std::size_t total = w * w;
    auto idx = [w](int i, int j) {
        return (static_cast<std::size_t>(j) + 1) * w + static_cast<std::size_t>(i) + 1;
    };

    // Fixed boundary data lives in `fixed`; the unknowns (and all CG
    // vectors) live on the zero-masked complement.
    std::vector<double> fixed(total, 0.0), mask(total, 0.0);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const char k = grid.at(i, j);
            if (k == 2) fixed[idx(i, j)] = 1.0;
            if (k == 1) mask[idx(i, j)] = 1.0;
        }
    }

    std::vector<double> b(total, 0.0);
    kernels::stencil5(fixed.data(), mask.data(), b.data(), n, n);
    for (double& v : b) v = -v;

    // Concentric rings get the harmonic radial ramp as the initial guess.
    std::vector<double> u(total, 0.0);
    if (e.concentric()) {
        const double lr = std::log(e.outer.radius / e.inner.radius);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                if (grid.at(i, j) != 1) continue;
                const double x = grid.x0 + (i + 0.5) * grid.h - e.outer.center.x;
                const double y = grid.y0 + (j + 0.5) * grid.h - e.outer.center.y;
                const double r = std::hypot(x, y);
                const double v = std::log(e.outer.radius / r) / lr;
                u[idx(i, j)] = std::clamp(v, 0.0, 1.0);
            }
        }
    }

    // Conjugate gradients on the masked 5-point system.
    std::vector<double> r(total, 0.0), p(total, 0.0), ap(total, 0.0);
    kernels::stencil5(u.data(), mask.data(), r.data(), n, n);
    for (std::size_t i = 0; i < total; ++i) r[i] = b[i] - r[i];
    p = r;
    const double bb = kernels::dot(b.data(), b.data(), total);
    double rr = kernels::dot(r.data(), r.data(), total);

    CapacityEstimate est;
    est.grid = g;
    const double target2 = g.solver_tolerance * g.solver_tolerance * bb;
    int it = 0;
    if (bb > 0.0) {
        for (; it < g.max_iterations && rr > target2; ++it) {
            kernels::stencil5(p.data(), mask.data(), ap.data(), n, n);
            const double pap = kernels::dot(p.data(), ap.data(), total);
            if (!(pap > 0.0)) break;
            const double alpha = rr / pap;
            kernels::axpy(alpha, p.data(), u.data(), total);
            kernels::axpy(-alpha, ap.data(), r.data(), total);
            const double rr_new = kernels::dot(r.data(), r.data(), total);
            kernels::xpay(r.data(), rr_new / rr, p.data(), total);
            rr = rr_new;
        }
        est.residual = std::sqrt(rr / bb);
        if (rr > target2)
            throw SolverError("capacity_dirichlet: no convergence after " +
                                  std::to_string(it) + " iterations (residual " +
                                  std::to_string(est.residual) + ")",
                              est.residual);
    }
    est.iterations = it;

    for (std::size_t i = 0; i < total; ++i) u[i] = mask[i] * u[i] + fixed[i];
    est.value = kernels::edge_energy(u.data(), n, n);
    return est;
}

ConsistencyReport capacity_modulus_consistency(const RingCondenser& e, const GridSpec& g) {
    if (!e.concentric())
        throw ValidationError("capacity_modulus_consistency: analytic modulus needs a "
                              "concentric round ring");
    const double baseline = annulus_ring_modulus(e.inner.radius, e.outer.radius);
    ConsistencyReport rep;
    for (int divisor : {4, 2, 1}) {
        GridSpec level = g;
        level.cells_per_axis = g.cells_per_axis / divisor;
        if (level.cells_per_axis < 16) continue;
        // drop coarse rungs that cannot resolve the gap; the finest rung
        // still reports its own failure if even it is too coarse
        const double h = 2.0 * e.outer.radius / level.cells_per_axis;
        if (divisor != 1 && e.min_gap() < 8.0 * h) continue;
        const CapacityEstimate est = capacity_dirichlet(e, level);
        ConsistencyRow row;
        row.cells = level.cells_per_axis;
        row.estimate = est.value;
        row.baseline = baseline;
        row.rel_gap = std::abs(est.value - baseline) / baseline;
        row.residual = est.residual;
        rep.rows.push_back(row);
    }
    rep.gaps_shrink = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        rep.gaps_shrink = rep.gaps_shrink && rep.rows[i].rel_gap < rep.rows[i - 1].rel_gap;
    }
    return rep;
}

RingCondenser condenser_image(const RingCondenser& e, const RadialMap& f) {
    if (!same_point(e.outer.center, f.center) || !e.concentric())
        throw ValidationError("condenser_image: condenser must be concentric with the "
                              "map center");
    const PlanePoint c = f.center;
    return RingCondenser(Disk(c, f.rho(e.outer.radius)), Disk(c, f.rho(e.inner.radius)));
}

std::string mask_bitmap(const RingCondenser& e, const GridSpec& g) {
    g.validate();
    const CellGrid grid = classify_cells(e, g);
    std::ostringstream os;
    for (int j = grid.n - 1; j >= 0; --j) {
        for (int i = 0; i < grid.n; ++i) {
            const char k = grid.at(i, j);
            os << (k == 2 ? '#' : k == 1 ? '.' : ' ');
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace qclab
