#pragma once

#include <string>
#include <vector>

#include "qclab/beltrami.hpp"
#include "qclab/dispersion.hpp"
#include "qclab/quadrature.hpp"

namespace qclab {

// Nonnegative radial test function with unit integral over its support
// (validated at construction to 1e-8).
struct RadialTestFunction {
    std::function<double(double)> eta;
    double r1 = 0.0;
    double r2 = 0.0;
    std::string label;
};

// eta == 1/(r2 - r1) on (r1, r2)
RadialTestFunction eta_uniform(double r1, double r2);

// eta(t) = 1/(t * log(r2/r1)): the extremal density of the round ring.
RadialTestFunction eta_reciprocal(double r1, double r2);

// eta(t) = 1/(t log t * log log R) on (e, R); requires R > e^e so the
// normalizing factor log log R exceeds 1.
RadialTestFunction eta_log_weight(double R);

// integral over r1 < |z - z0| < r2 of Q(z) * eta(|z - z0|)^2
double ring_weighted_energy(const ScalarField& Q, const PlanePoint& z0, double r1,
                            double r2, const RadialTestFunction& eta,
                            const QuadratureSpec& q);

// Modulus of the image of the ring r1 < |z - z0| < r2 under a radial
// stretching centered at z0: the round-ring value with radii rho(r1), rho(r2).
double image_annulus_modulus(const RadialMap& f, double r1, double r2);

// One verification of the ring inequality
//   modulus(image ring) <= ring_weighted_energy(Q)
// for a given test function.
struct RingQReport {
    double r1, r2;
    double lhs_modulus;
    double rhs_integral;
    std::string eta_label;
    bool pass;
    double margin;
};

// Checks the inequality for every supplied test function, with Q given
// explicitly (so deliberately falsified weights can be exercised).
std::vector<RingQReport> ring_inequality_check(const RadialMap& f, const ScalarField& Q,
                                               double r1, double r2,
                                               const std::vector<RadialTestFunction>& etas,
                                               const QuadratureSpec& q);

// Same with Q = the dilatation field of f.
std::vector<RingQReport> ring_inequality_check(const RadialMap& f, double r1, double r2,
                                               const std::vector<RadialTestFunction>& etas,
                                               const QuadratureSpec& q);

// Dispersion data, unit-scale mean and growth constant of a dilatation
// field, assembled once and shared by the chain checks. The growth exponent
// 2*pi/C never exceeds 6/pi^2 when the mean is >= 1.
struct DilatationContext {
    ScalarField K;
    PlanePoint z0;
    DispersionReport dispersion;
    double k0 = 1.0;
    GrowthConstant constant;
    double exponent = 0.0;  // 2*pi/C
};

DilatationContext dilatation_context(const ScalarField& K, const PlanePoint& z0,
                                     const std::vector<double>& dispersion_radii,
                                     const QuadratureSpec& q);

// The capacity chain at one outer radius R > e^e:
//   modulus-upper:           cap(image ring)  <= weighted energy of K
//   dispersion-upper:        cap(image ring)  <= C / log log R
//   dispersion-upper-slack:  same with C inflated 10% (distinguishes genuine
//                            violations from undersized grid dispersion)
//   area-lower:              cap(image ring)  >= 4 pi / log(image area ratio)
//   circle-growth:           min_{|z-z0|=e}|f-f(z0)| <= max_{|z-z0|=R}|f-f(z0)| / (log R)^{2 pi/C}
struct ChainCheck {
    std::string label;
    double lhs;
    double rhs;
    double margin;
    bool pass;
};

struct ChainDiagnostics {
    double R = 0.0;
    double cap_image = 0.0;
    std::vector<ChainCheck> checks;
    bool pass = false;
    const ChainCheck& check(const std::string& label) const;
};

ChainDiagnostics capacity_chain(const RadialMap& f, const DilatationContext& ctx, double R,
                                const QuadratureSpec& q);

// Radius sweep of circle maxima and growth ratios
//   ratio(R) = max_{|z-z0|=R} |f - f(z0)| / (log R)^{2 pi / C},
// with the chain run at every R. liminf_proxy is the smallest ratio over the
// tail half of the grid; the report passes when the proxy is >= l_f (the
// circle-e minimum) and the circle-growth link holds at every R.
struct GrowthRow {
    double R;
    double max_on_circle;
    double ratio;
    ChainDiagnostics chain;
};

struct GrowthReport {
    PlanePoint z0;
    double l_f = 0.0;
    GrowthConstant constant;
    double exponent = 0.0;
    std::vector<GrowthRow> rows;
    double liminf_proxy = 0.0;
    bool pass = false;
    QuadratureSpec quadrature;
};

GrowthReport growth_report(const RadialMap& f, const DilatationContext& ctx,
                           const std::vector<double>& radius_grid,
                           const QuadratureSpec& q);

}  // namespace qclab
