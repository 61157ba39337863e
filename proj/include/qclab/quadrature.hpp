#pragma once

#include <functional>
#include <vector>

#include "qclab/geometry.hpp"
#include "qclab/scalar_field.hpp"

namespace qclab {

// Deterministic composite quadrature. Radial integrals use a fixed-order
// Gauss panel rule; panels are log-uniform by default since every profile of
// interest varies on logarithmic radius scales. Angular integration uses the
// uniform rectangle rule, which is spectrally accurate on periodic data.
struct QuadratureSpec {
    enum class Spacing { uniform, log_uniform };

    int radial_panels = 64;
    int nodes_per_panel = 5;
    int angular_nodes = 256;
    Spacing spacing = Spacing::log_uniform;

    void validate() const;
};

enum class ExtremumKind { min, max };

using Fn1D = std::function<double(double)>;

// Composite Gauss approximation of int_a^b f(t) dt. `splits` are interior
// abscissae where f may lose smoothness; panel edges snap to them.
double integrate_1d(const Fn1D& f, double a, double b, const QuadratureSpec& q,
                    std::vector<double> splits = {});

// 2*pi * int_{r_inner}^{r_outer} g(r) r dr   (value of a radially symmetric
// plane integral over the annulus).
double integrate_radial(const Fn1D& g, const Annulus& a, const QuadratureSpec& q,
                        std::vector<double> splits = {});

// Plane integral of the field over a disk or annulus. Radially symmetric
// fields about the region center reduce to integrate_radial; otherwise a
// polar product rule is used, with per-ray panel splitting wherever the
// field's breakpoint circles cross the ray.
double integrate_field(const ScalarField& f, const Disk& region, const QuadratureSpec& q);
double integrate_field(const ScalarField& f, const Annulus& region, const QuadratureSpec& q);

// Same, with an extra radial weight w(|z - region.center|) multiplying the
// field. The weight must be smooth on the region's radial range.
double integrate_field_weighted(const ScalarField& f, const Annulus& region,
                                const Fn1D& radial_weight, const QuadratureSpec& q);

// Extremum of the field over sampled angles of the circle; exact (and
// independent of the node count) when the field is radial about the center.
// Sampling makes the result a lower bound for max and an upper bound for min.
double extremum_on_circle(const ScalarField& h, const Circle& c, int angular_nodes,
                          ExtremumKind kind);

// Radii in (a, b) where g crosses `level`, located by scan + bisection on
// each smooth piece. Used to split |g - level| integrands at their kinks.
std::vector<double> find_level_crossings(const Fn1D& g, double a, double b, double level,
                                         const std::vector<double>& splits,
                                         QuadratureSpec::Spacing spacing);

}  // namespace qclab
