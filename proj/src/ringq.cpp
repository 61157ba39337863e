#include "qclab/ringq.hpp"

#include <algorithm>
#include <cmath>

#include "qclab/capacity.hpp"
#include "qclab/errors.hpp"

namespace qclab {

namespace {

constexpr double kEE = 15.154262241479262;  // e^e

RadialTestFunction checked(RadialTestFunction eta) {
    if (!(0.0 < eta.r1 && eta.r1 < eta.r2))
        throw ValidationError("RadialTestFunction: requires 0 < r1 < r2");
    QuadratureSpec q;
    const double total = integrate_1d(eta.eta, eta.r1, eta.r2, q);
    if (std::abs(total - 1.0) > 1e-8)
        throw ValidationError("RadialTestFunction '" + eta.label +
                              "': integral over support is " + std::to_string(total) +
                              ", expected 1");
    return eta;
}

ScalarField circle_distance_field(const RadialMap& f) {
    const RadialMap map = f;
    return ScalarField::radial(
        f.center, [map](double r) { return r > 0.0 ? map.rho(r) : 0.0; },
        f.profile.breakpoints);
}

bool pass_with_relative_slack(double lhs, double rhs, double rel) {
    return lhs <= rhs + rel * std::abs(rhs) + 1e-12;
}

}  // namespace

RadialTestFunction eta_uniform(double r1, double r2) {
    RadialTestFunction eta;
    eta.r1 = r1;
    eta.r2 = r2;
    const double inv = 1.0 / (r2 - r1);
    eta.eta = [inv](double) { return inv; };
    eta.label = "uniform";
    return checked(std::move(eta));
}

RadialTestFunction eta_reciprocal(double r1, double r2) {
    RadialTestFunction eta;
    eta.r1 = r1;
    eta.r2 = r2;
    const double norm = std::log(r2 / r1);
    eta.eta = [norm](double t) { return 1.0 / (t * norm); };
    eta.label = "reciprocal";
    return checked(std::move(eta));
}

RadialTestFunction eta_log_weight(double R) {
    if (!(R > kEE))
        throw ValidationError("eta_log_weight: requires R > e^e, got " + std::to_string(R));
    RadialTestFunction eta;
    eta.r1 = std::exp(1.0);
    eta.r2 = R;
    const double norm = std::log(std::log(R));
    eta.eta = [norm](double t) { return 1.0 / (t * std::log(t) * norm); };
    eta.label = "logweight";
    return checked(std::move(eta));
}

double ring_weighted_energy(const ScalarField& Q, const PlanePoint& z0, double r1,
                            double r2, const RadialTestFunction& eta,
                            const QuadratureSpec& q) {
    if (!(r1 >= eta.r1 - 1e-12) || !(r2 <= eta.r2 + 1e-12))
        throw ValidationError("ring_weighted_energy: test function support (" +
                              std::to_string(eta.r1) + ", " + std::to_string(eta.r2) +
                              ") does not cover the ring");
    const Annulus ring(z0, r1, r2);
    auto weight = [&eta](double t) {
        const double v = eta.eta(t);
        return v * v;
    };
    return integrate_field_weighted(Q, ring, weight, q);
}

double image_annulus_modulus(const RadialMap& f, double r1, double r2) {
    if (!(0.0 < r1 && r1 < r2))
        throw ValidationError("image_annulus_modulus: requires 0 < r1 < r2");
    return annulus_ring_modulus(f.rho(r1), f.rho(r2));
}

std::vector<RingQReport> ring_inequality_check(const RadialMap& f, const ScalarField& Q,
                                               double r1, double r2,
                                               const std::vector<RadialTestFunction>& etas,
                                               const QuadratureSpec& q) {
    std::vector<RingQReport> out;
    const double lhs = image_annulus_modulus(f, r1, r2);
    for (const RadialTestFunction& eta : etas) {
        RingQReport rep;
        rep.r1 = r1;
        rep.r2 = r2;
        rep.eta_label = eta.label;
        rep.lhs_modulus = lhs;
        rep.rhs_integral = ring_weighted_energy(Q, f.center, r1, r2, eta, q);
        rep.margin = rep.rhs_integral - rep.lhs_modulus;
        rep.pass = pass_with_relative_slack(rep.lhs_modulus, rep.rhs_integral, 1e-6);
        out.push_back(rep);
    }
    return out;
}

std::vector<RingQReport> ring_inequality_check(const RadialMap& f, double r1, double r2,
                                               const std::vector<RadialTestFunction>& etas,
                                               const QuadratureSpec& q) {
    return ring_inequality_check(f, dilatation_field(f), r1, r2, etas, q);
}

DilatationContext dilatation_context(const ScalarField& K, const PlanePoint& z0,
                                     const std::vector<double>& dispersion_radii,
                                     const QuadratureSpec& q) {
    DilatationContext ctx;
    ctx.K = K;
    ctx.z0 = z0;
    ctx.dispersion = dispersion_sup(K, z0, dispersion_radii, q);
    ctx.k0 = mean_over_disk(K, z0, std::exp(1.0), q);
    if (!(ctx.k0 >= 1.0 - 1e-9))
        throw ValidationError("dilatation_context: unit-scale mean " +
                              std::to_string(ctx.k0) + " below 1; not a dilatation field");
    ctx.constant = growth_constant(ctx.dispersion.delta_inf_hat, ctx.k0);
    ctx.exponent = 2.0 * M_PI / ctx.constant.value;
    if (!(ctx.exponent <= 6.0 / (M_PI * M_PI) + 1e-12))
        throw ValidationError("dilatation_context: growth exponent exceeds 6/pi^2");
    return ctx;
}

const ChainCheck& ChainDiagnostics::check(const std::string& label) const {
    for (const ChainCheck& c : checks) {
        if (c.label == label) return c;
    }
    throw ValidationError("ChainDiagnostics: no check labeled '" + label + "'");
}

ChainDiagnostics capacity_chain(const RadialMap& f, const DilatationContext& ctx, double R,
                                const QuadratureSpec& q) {
    if (!(R > kEE)) throw ValidationError("capacity_chain: requires R > e^e");
    if (!same_point(f.center, ctx.z0))
        throw ValidationError("capacity_chain: context center must match the map center");
    const double e = std::exp(1.0);
    ChainDiagnostics diag;
    diag.R = R;
    diag.cap_image = image_annulus_modulus(f, e, R);

    auto add = [&diag](const std::string& label, double lhs, double rhs, bool quadrature) {
        ChainCheck c;
        c.label = label;
        c.lhs = lhs;
        c.rhs = rhs;
        c.margin = rhs - lhs;
        c.pass = quadrature ? pass_with_relative_slack(lhs, rhs, 1e-6)
                            : pass_with_relative_slack(lhs, rhs, 1e-12);
        diag.checks.push_back(c);
    };

    const double rhs_energy =
        ring_weighted_energy(ctx.K, ctx.z0, e, R, eta_log_weight(R), q);
    add("modulus-upper", diag.cap_image, rhs_energy, true);

    const double loglogR = std::log(std::log(R));
    add("dispersion-upper", diag.cap_image, ctx.constant.value / loglogR, false);
    add("dispersion-upper-slack", diag.cap_image, 1.1 * ctx.constant.value / loglogR,
        false);

    const double rho_e = f.rho(e), rho_R = f.rho(R);
    const double area_bound =
        capacity_lower_bound(M_PI * rho_R * rho_R, M_PI * rho_e * rho_e);
    add("area-lower", area_bound, diag.cap_image, false);

    const ScalarField dist = circle_distance_field(f);
    const double min_e = extremum_on_circle(dist, Circle(ctx.z0, e), q.angular_nodes,
                                            ExtremumKind::min);
    const double max_R = extremum_on_circle(dist, Circle(ctx.z0, R), q.angular_nodes,
                                            ExtremumKind::max);
    add("circle-growth", min_e, max_R / std::pow(std::log(R), ctx.exponent), false);

    diag.pass = true;
    for (const ChainCheck& c : diag.checks) diag.pass = diag.pass && c.pass;
    return diag;
}

GrowthReport growth_report(const RadialMap& f, const DilatationContext& ctx,
                           const std::vector<double>& radius_grid,
                           const QuadratureSpec& q) {
    if (radius_grid.size() < 8)
        throw ValidationError("growth_report: radius grid needs at least 8 points");
    for (std::size_t i = 0; i < radius_grid.size(); ++i) {
        if (!(radius_grid[i] > kEE))
            throw ValidationError("growth_report: grid radii must exceed e^e");
        if (i > 0 && !(radius_grid[i] > radius_grid[i - 1]))
            throw ValidationError("growth_report: grid must be strictly increasing");
    }

    GrowthReport rep;
    rep.z0 = ctx.z0;
    rep.constant = ctx.constant;
    rep.exponent = ctx.exponent;
    rep.quadrature = q;
    const ScalarField dist = circle_distance_field(f);
    rep.l_f = extremum_on_circle(dist, Circle(ctx.z0, std::exp(1.0)), q.angular_nodes,
                                 ExtremumKind::min);

    bool growth_links_pass = true;
    for (double R : radius_grid) {
        GrowthRow row;
        row.R = R;
        row.max_on_circle =
            extremum_on_circle(dist, Circle(ctx.z0, R), q.angular_nodes, ExtremumKind::max);
        row.ratio = row.max_on_circle / std::pow(std::log(R), ctx.exponent);
        row.chain = capacity_chain(f, ctx, R, q);
        growth_links_pass = growth_links_pass && row.chain.check("circle-growth").pass;
        rep.rows.push_back(row);
    }

    const std::size_t tail_start = rep.rows.size() / 2;
    rep.liminf_proxy = rep.rows[tail_start].ratio;
    for (std::size_t i = tail_start; i < rep.rows.size(); ++i) {
        rep.liminf_proxy = std::min(rep.liminf_proxy, rep.rows[i].ratio);
    }
    rep.pass = growth_links_pass && rep.liminf_proxy >= rep.l_f - 1e-6;
    return rep;
}

}  // namespace qclab
