#include "qclab/dispersion.hpp"

#include <algorithm>
#include <cmath>

#include "qclab/errors.hpp"

namespace qclab {

namespace {

constexpr double kEE = 15.154262241479262;  // e^e

void require_dispersion_grid(const std::vector<double>& radii) {
    if (radii.empty()) throw ValidationError("dispersion grid must be nonempty");
    for (double R : radii) {
        if (!(R > kEE))
            throw ValidationError("dispersion grid radii must exceed e^e (got " +
                                  std::to_string(R) + ")");
    }
}

// last value bounded by the early plateau => treated as bounded on the grid
bool bounded_on_grid(const std::vector<double>& v) {
    if (v.size() < 2) return true;
    double head = 0.0;
    for (std::size_t i = 0; i < (v.size() + 1) / 2; ++i) head = std::max(head, v[i]);
    return v.back() <= 1.25 * head + 1e-9;
}

double log_weight(double t) {
    if (!(t > 1.0))
        throw ValidationError("log weight undefined for radius <= 1 (got " +
                              std::to_string(t) + ")");
    const double d = t * std::log(t);
    return 1.0 / (d * d);
}

// |phi - level| with kink radii resolved, exploiting radial symmetry about
// any center when the field declares one.
ScalarField abs_deviation_field(const ScalarField& phi, const PlanePoint& z0, double R,
                                double level) {
    if (!phi.is_radial()) {
        return ScalarField::pointwise(
            [phi, level](const PlanePoint& p) { return std::abs(phi(p) - level); });
    }
    const PlanePoint c = *phi.radial_center();
    const double d = distance(c, z0);
    const double lo = std::max(0.0, d - R);
    const double hi = d + R;
    auto g = [&phi](double r) { return phi.at_radius(r); };
    std::vector<double> splits = phi.radial_breakpoints();
    const std::vector<double> crossings = find_level_crossings(
        g, lo, hi, level, splits, QuadratureSpec::Spacing::log_uniform);
    splits.insert(splits.end(), crossings.begin(), crossings.end());
    return ScalarField::radial(
        c, [phi, level](double r) { return std::abs(phi.at_radius(r) - level); },
        std::move(splits));
}

}  // namespace

GrowthConstant growth_constant(double delta, double phi0) {
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw ValidationError("growth_constant: dispersion must be finite and >= 0");
    if (!(phi0 >= 0.0) || !std::isfinite(phi0))
        throw ValidationError("growth_constant: unit-scale mean must be finite and >= 0");
    GrowthConstant c;
    c.delta_component = (M_PI / 6.0) * (24.0 + M_PI * M_PI) * std::exp(2.0) * delta;
    c.mean_component = (M_PI / 6.0) * 2.0 * M_PI * M_PI * phi0;
    c.value = c.delta_component + c.mean_component;
    return c;
}

double mean_over_disk(const ScalarField& phi, const PlanePoint& z0, double R,
                      const QuadratureSpec& q) {
    if (!(R > 0.0)) throw ValidationError("mean_over_disk: radius must be positive");
    const Disk b(z0, R);
    return integrate_field(phi, b, q) / b.area();
}

double mean_abs_deviation_about(const ScalarField& phi, const PlanePoint& z0, double R,
                                double level, const QuadratureSpec& q) {
    if (!(R > 0.0)) throw ValidationError("mean_abs_deviation: radius must be positive");
    const Disk b(z0, R);
    return integrate_field(abs_deviation_field(phi, z0, R, level), b, q) / b.area();
}

double mean_deviation(const ScalarField& phi, const PlanePoint& z0, double R,
                      const QuadratureSpec& q) {
    return mean_abs_deviation_about(phi, z0, R, mean_over_disk(phi, z0, R, q), q);
}

DispersionReport dispersion_sup(const ScalarField& phi, const PlanePoint& z0,
                                const std::vector<double>& radii, const QuadratureSpec& q) {
    require_dispersion_grid(radii);
    DispersionReport rep;
    rep.center = z0;
    rep.quadrature = q;
    rep.radii = radii;
    std::sort(rep.radii.begin(), rep.radii.end());
    rep.phi0 = mean_over_disk(phi, z0, std::exp(1.0), q);
    for (double R : rep.radii) {
        const double mean = mean_over_disk(phi, z0, R, q);
        const double dev = mean_abs_deviation_about(phi, z0, R, mean, q);
        rep.means.push_back(mean);
        rep.deviations.push_back(dev);
    }
    rep.delta_inf_hat = *std::max_element(rep.deviations.begin(), rep.deviations.end());
    const double low = *std::min_element(rep.deviations.begin(), rep.deviations.end());
    rep.stabilizing = rep.delta_inf_hat <= 1.25 * low + 1e-12;
    return rep;
}

std::vector<double> default_dispersion_grid() {
    std::vector<double> radii;
    radii.push_back(std::exp(std::exp(1.0) + 0.01));
    for (int k = 1; k <= 12; ++k) radii.push_back(std::exp(std::exp(1.0) + 0.5 * k));
    return radii;
}

std::vector<double> log_spaced_radii(double exp_lo, double exp_hi, int count) {
    if (count < 2 || !(exp_lo < exp_hi))
        throw ValidationError("log_spaced_radii: need exp_lo < exp_hi and count >= 2");
    std::vector<double> radii(count);
    for (int i = 0; i < count; ++i) {
        radii[i] = std::exp(exp_lo + (exp_hi - exp_lo) * i / (count - 1));
    }
    return radii;
}

OscillationEvidence oscillation_evidence(const ScalarField& phi, const PlanePoint& z0,
                           const std::vector<double>& radii, const QuadratureSpec& q) {
    require_dispersion_grid(radii);
    OscillationEvidence ev;
    ev.radii = radii;
    std::sort(ev.radii.begin(), ev.radii.end());
    const double center_value = phi(z0);
    for (double R : ev.radii) {
        const double mean = mean_over_disk(phi, z0, R, q);
        ev.field_mean.push_back(mean);
        ev.dev_from_mean.push_back(mean_abs_deviation_about(phi, z0, R, mean, q));
        ev.dev_from_center.push_back(mean_abs_deviation_about(phi, z0, R, center_value, q));
    }
    ev.dev_from_mean_bounded = bounded_on_grid(ev.dev_from_mean);
    ev.dev_from_center_bounded = bounded_on_grid(ev.dev_from_center);
    ev.field_mean_bounded = bounded_on_grid(ev.field_mean);
    return ev;
}

double log_weighted_integral(const ScalarField& phi, const PlanePoint& z0, double R,
                             const QuadratureSpec& q) {
    const double e = std::exp(1.0);
    if (!(R > e))
        throw ValidationError("log_weighted_integral: outer radius must exceed e");
    const Annulus ring(z0, e, R);
    return integrate_field_weighted(phi, ring, log_weight, q);
}

DispersionBoundReport dispersion_bound_check(const ScalarField& phi, const PlanePoint& z0,
                                             const std::vector<double>& radii,
                                             const QuadratureSpec& q) {
    DispersionBoundReport rep;
    rep.dispersion = dispersion_sup(phi, z0, radii, q);
    rep.constant = growth_constant(rep.dispersion.delta_inf_hat, rep.dispersion.phi0);
    rep.pass = true;
    for (std::size_t i = 0; i < rep.dispersion.radii.size(); ++i) {
        BoundRow row;
        row.R = rep.dispersion.radii[i];
        row.mean = rep.dispersion.means[i];
        row.deviation = rep.dispersion.deviations[i];
        row.lhs = log_weighted_integral(phi, z0, row.R, q);
        row.bound = rep.constant.value * std::log(std::log(row.R));
        row.margin = row.bound - row.lhs;
        row.pass = row.lhs <= row.bound * (1.0 + 1e-6) + 1e-12;
        rep.pass = rep.pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

ShellReport shell_decomposition(const ScalarField& phi, const PlanePoint& z0, double R,
                                const QuadratureSpec& q, double grid_delta) {
    if (!(R > kEE)) throw ValidationError("shell_decomposition: requires R > e^e");
    if (!(grid_delta >= 0.0))
        throw ValidationError("shell_decomposition: dispersion estimate must be >= 0");

    ShellReport rep;
    rep.R = R;
    rep.N = static_cast<int>(std::floor(std::log(R) + 1e-12));

    // phi_k over B(z0, e^k) for k = 1..N+1, and the deviations at those radii
    // that the shell estimates lean on (radii e^2..e^{N+1}; some lie below
    // e^e, so the grid estimate alone cannot cover them).
    rep.delta_used = grid_delta;
    std::vector<double> devs(rep.N + 2, 0.0);
    for (int k = 1; k <= rep.N + 1; ++k) {
        const double r = std::exp(static_cast<double>(k));
        rep.shell_means.push_back(mean_over_disk(phi, z0, r, q));
        if (k >= 2) {
            devs[k] = mean_abs_deviation_about(phi, z0, r, rep.shell_means.back(), q);
            rep.delta_used = std::max(rep.delta_used, devs[k]);
        }
    }
    for (int k = 2; k <= rep.N + 1; ++k) {
        rep.mean_steps.push_back(std::abs(rep.shell_means[k - 2] - rep.shell_means[k - 1]));
    }

    const double e2 = std::exp(2.0);
    double centered_sum = 0.0;
    double basel_partial = 0.0;
    rep.alpha_bounds_ok = true;
    for (int k = 1; k <= rep.N; ++k) {
        ShellRow row;
        row.k = k;
        row.r_lo = std::exp(static_cast<double>(k));
        row.r_hi = std::exp(static_cast<double>(k + 1));
        const Annulus shell(z0, row.r_lo, row.r_hi);
        row.alpha_integral =
            integrate_field_weighted(ScalarField::constant(1.0), shell, log_weight, q);
        row.inv_sq_integral = integrate_field_weighted(
            ScalarField::constant(1.0), shell, [](double t) { return 1.0 / (t * t); }, q);
        const double phi_k1 = rep.shell_means[k];  // phi_{k+1}
        row.centered_term =
            integrate_field_weighted(phi, shell, log_weight, q) - phi_k1 * row.alpha_integral;
        rep.alpha_bounds_ok = rep.alpha_bounds_ok &&
                              row.alpha_integral <= 2.0 * M_PI / (k * k) * (1.0 + 1e-9);
        centered_sum += row.centered_term;
        rep.weighted_sum += phi_k1 * row.alpha_integral;
        basel_partial += 1.0 / (static_cast<double>(k) * k);
        rep.harmonic_sum += 1.0 / static_cast<double>(k);
        rep.shells.push_back(row);
    }
    rep.centered_sum_abs = std::abs(centered_sum);
    rep.total = log_weighted_integral(phi, z0, rep.shells.back().r_hi, q);

    const double slack = 1e-6 * (1.0 + rep.total);
    rep.centered_bound_ok =
        rep.centered_sum_abs <= M_PI * e2 * rep.delta_used * basel_partial + slack;
    rep.step_bounds_ok = true;
    for (double step : rep.mean_steps) {
        rep.step_bounds_ok = rep.step_bounds_ok && step <= e2 * rep.delta_used + 1e-9;
    }
    rep.harmonic_ok = rep.harmonic_sum < 1.0 + std::log(std::log(R));
    rep.split_ok = rep.total <= rep.centered_sum_abs + rep.weighted_sum + slack;
    rep.pass = rep.centered_bound_ok && rep.alpha_bounds_ok && rep.step_bounds_ok &&
               rep.harmonic_ok && rep.split_ok;
    return rep;
}

}  // namespace qclab
