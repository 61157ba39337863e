#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qclab/geometry.hpp"
#include "qclab/scalar_field.hpp"

namespace qclab {

// Complex coefficient mu with |mu| < 1 wherever evaluated. essential_bound is
// sup|mu| when finite; nullopt declares that |mu| approaches 1 (unbounded
// distortion).
class BeltramiCoefficient {
public:
    using EvalFn = std::function<std::complex<double>(const PlanePoint&)>;

    BeltramiCoefficient() = default;
    BeltramiCoefficient(EvalFn eval, std::optional<double> essential_bound)
        : eval_(std::move(eval)), essential_bound_(essential_bound) {}

    std::complex<double> operator()(const PlanePoint& p) const { return eval_(p); }
    const std::optional<double>& essential_bound() const { return essential_bound_; }

private:
    EvalFn eval_;
    std::optional<double> essential_bound_;
};

// Strictly increasing profile rho with rho(0+) = 0; rho_prime > 0 off the
// listed breakpoints.
struct RadialProfile {
    std::function<double(double)> rho;
    std::function<double(double)> rho_prime;
    std::vector<double> breakpoints;
    std::string name;
};

// Radial stretching f(z) = center + rho(|z - center|) * (z - center)/|z - center|.
// Fixes its center and maps circles about the center to circles of radius
// rho(r), so |f(z) - f(center)| = rho(|z - center|).
struct RadialMap {
    RadialProfile profile;
    PlanePoint center{0.0, 0.0};

    double rho(double r) const { return profile.rho(r); }
    std::complex<double> displacement(const PlanePoint& z) const;
    PlanePoint apply(const PlanePoint& z) const;
    bool near_breakpoint(double r, double margin) const;
};

// (1 + |mu|) / (1 - |mu|); throws DegeneratePointError when |mu(z)| >= 1.
double dilatation_from_mu(const BeltramiCoefficient& mu, const PlanePoint& z);

// mu(z) = e^{2 i theta} (r rho' - rho) / (r rho' + rho) with z - center = r e^{i theta}.
BeltramiCoefficient mu_from_radial_map(const RadialMap& m);

// max(r rho'/rho, rho/(r rho')) at radius r.
double dilatation_from_radial_map(const RadialMap& m, double r);

// Dilatation of the map as a scalar field, radial about the map center.
ScalarField dilatation_field(const RadialMap& m);

// Central-difference Wirtinger derivatives (f_z, f_zbar) at z with step h.
// Refuses evaluation when the four-point stencil straddles a profile
// breakpoint (or the center) within 2h.
std::pair<std::complex<double>, std::complex<double>> wirtinger_fd(const RadialMap& m,
                                                                   const PlanePoint& z,
                                                                   double h);

// max over samples of |f_zbar - mu(z) f_z|; numerical witness that (f, mu)
// solves the defining first-order system.
double beltrami_residual(const RadialMap& m, const BeltramiCoefficient& mu,
                         const std::vector<PlanePoint>& samples, double h);

// Deterministic sample points in the annulus r in (r_lo, r_hi) about the map
// center, avoiding profile breakpoints by at least `margin`.
std::vector<PlanePoint> sample_annulus_points(const RadialMap& m, double r_lo, double r_hi,
                                              int count, unsigned long long seed,
                                              double margin);

// Exact fixtures.
RadialMap identity_map(PlanePoint center = {0.0, 0.0});
// rho(r) = r^{1/K}; constant dilatation K >= 1.
RadialMap power_map(double K, PlanePoint center = {0.0, 0.0});
// rho(r) = r for r <= 1, 1 + log r for r >= 1; dilatation 1 + log^+ r.
RadialMap log_map(PlanePoint center = {0.0, 0.0});

// Fixture lookup: "identity", "power:K", "log".
RadialMap fixture_by_name(const std::string& name, PlanePoint center = {0.0, 0.0});

// Piecewise-linear profile from a text table with columns r, rho, rho_prime
// ('#' comments). Radii and rho must be strictly increasing, rho_prime > 0;
// all table nodes become breakpoints. Evaluation outside the tabulated range
// throws.
RadialProfile load_profile_table(std::istream& in, const std::string& origin);
RadialMap map_from_table_file(const std::string& path, PlanePoint center = {0.0, 0.0});

}  // namespace qclab
