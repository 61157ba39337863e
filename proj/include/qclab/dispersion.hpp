#pragma once

#include <vector>

#include "qclab/quadrature.hpp"
#include "qclab/scalar_field.hpp"

namespace qclab {

// Mean deviations of a field over growing disks. delta_inf_hat is the
// maximum over the radius grid: a finite-grid lower estimate of the true
// supremum over all R > e^e. phi0 is the mean over B(center, e).
struct DispersionReport {
    PlanePoint center;
    std::vector<double> radii;
    std::vector<double> means;
    std::vector<double> deviations;
    double delta_inf_hat = 0.0;
    double phi0 = 0.0;
    bool stabilizing = true;    // heuristic: deviations flat across the grid
    QuadratureSpec quadrature;  // resolution the report was computed with
};

// C = (pi/6) * ((24 + pi^2) e^2 delta + 2 pi^2 phi0), split into its two
// summands. degenerate() flags C = 0, where the growth exponent 2*pi/C is
// undefined.
struct GrowthConstant {
    double value = 0.0;
    double delta_component = 0.0;
    double mean_component = 0.0;
    bool degenerate() const { return value == 0.0; }
};

GrowthConstant growth_constant(double delta, double phi0);

// (1 / pi R^2) * integral of phi over B(z0, R)
double mean_over_disk(const ScalarField& phi, const PlanePoint& z0, double R,
                      const QuadratureSpec& q);

// (1 / pi R^2) * integral of |phi - level| over B(z0, R); kinks of the
// integrand are located and panel edges snapped to them.
double mean_abs_deviation_about(const ScalarField& phi, const PlanePoint& z0, double R,
                                double level, const QuadratureSpec& q);

// mean_abs_deviation_about the disk mean itself
double mean_deviation(const ScalarField& phi, const PlanePoint& z0, double R,
                      const QuadratureSpec& q);

// Deviations over a grid of radii, all > e^e.
DispersionReport dispersion_sup(const ScalarField& phi, const PlanePoint& z0,
                                const std::vector<double>& radii, const QuadratureSpec& q);

// 13 radii: e^{e+0.01}, then e^{e+k/2} for k = 1..12. Starts just above e^e,
// where the growth bound is tightest.
std::vector<double> default_dispersion_grid();

// Radii e^a..e^b, log-spaced, count >= 2.
std::vector<double> log_spaced_radii(double exp_lo, double exp_hi, int count);

// Grid evidence for finite mean oscillation at z0: deviation from running
// disk means, deviation from the center value phi(z0), and the plain mean of
// the field. Boundedness on a finite grid is heuristic evidence, not proof.
struct OscillationEvidence {
    std::vector<double> radii;
    std::vector<double> dev_from_mean;
    std::vector<double> dev_from_center;
    std::vector<double> field_mean;
    bool dev_from_mean_bounded = false;
    bool dev_from_center_bounded = false;
    bool field_mean_bounded = false;
    bool oscillation_finite() const { return dev_from_mean_bounded; }
};

OscillationEvidence oscillation_evidence(const ScalarField& phi, const PlanePoint& z0,
                           const std::vector<double>& radii, const QuadratureSpec& q);

// integral over the annulus e < |z - z0| < R of
//   phi(z) / (|z - z0| * log|z - z0|)^2.
double log_weighted_integral(const ScalarField& phi, const PlanePoint& z0, double R,
                             const QuadratureSpec& q);

// Per-radius verification that the log-weighted integral stays below
// C * log log R, with C built from the grid dispersion estimate and the
// unit-scale mean of the field.
struct BoundRow {
    double R;
    double mean;
    double deviation;
    double lhs;
    double bound;
    double margin;
    bool pass;
};

struct DispersionBoundReport {
    DispersionReport dispersion;
    GrowthConstant constant;
    std::vector<BoundRow> rows;
    bool pass = false;
};

DispersionBoundReport dispersion_bound_check(const ScalarField& phi, const PlanePoint& z0,
                                             const std::vector<double>& radii,
                                             const QuadratureSpec& q);

// Decomposition of the log-weighted integral over the shells
// e^k <= |z - z0| < e^{k+1}, k = 1..N with R in [e^N, e^{N+1}), together
// with the estimates that drive the C * log log R bound. The dispersion
// value used here is the provided grid estimate enlarged by the mean
// deviations at the shell radii e^k themselves, which the shell bounds need
// even below e^e.
struct ShellRow {
    int k;
    double r_lo, r_hi;
    double alpha_integral;    // shell integral of 1/(r log r)^2
    double inv_sq_integral;   // shell integral of 1/r^2 (= 2 pi exactly)
    double centered_term;     // shell integral of (phi - phi_{k+1}) * alpha
};

struct ShellReport {
    double R = 0.0;
    int N = 0;
    double delta_used = 0.0;
    std::vector<double> shell_means;  // phi_k over B(z0, e^k), k = 1..N+1
    std::vector<double> mean_steps;   // |phi_{k-1} - phi_k|,  k = 2..N+1
    std::vector<ShellRow> shells;     // k = 1..N
    double centered_sum_abs = 0.0;    // |sum of centered terms|
    double weighted_sum = 0.0;        // sum of phi_{k+1} * alpha_integral
    double total = 0.0;               // log-weighted integral over the shell union
    double harmonic_sum = 0.0;        // sum_{k<=N} 1/k
    bool centered_bound_ok = false;   // |S1| <= pi e^2 delta * sum 1/k^2
    bool alpha_bounds_ok = false;     // per shell: alpha integral <= 2 pi / k^2
    bool step_bounds_ok = false;      // |phi_{k-1} - phi_k| <= e^2 delta
    bool harmonic_ok = false;         // sum 1/k < 1 + log log R
    bool split_ok = false;            // total <= |S1| + S2 + slack
    bool pass = false;
};

ShellReport shell_decomposition(const ScalarField& phi, const PlanePoint& z0, double R,
                                const QuadratureSpec& q, double grid_delta);

}  // namespace qclab
