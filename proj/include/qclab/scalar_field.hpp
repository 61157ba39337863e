#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qclab/geometry.hpp"

namespace qclab {

// Measurable function C -> [0, inf) evaluated pointwise. A field may declare
// radial symmetry about a center, in which case integration and circle
// extrema take an exact 1-D path. radial_breakpoints lists radii (about the
// symmetry center) where the profile loses smoothness; the quadrature snaps
// panel edges to them.
class ScalarField {
public:
    using PointFn = std::function<double(const PlanePoint&)>;
    using RadialFn = std::function<double(double)>;

    ScalarField() = default;

    static ScalarField pointwise(PointFn f) {
        ScalarField s;
        s.eval_ = std::move(f);
        return s;
    }

    // Pointwise field that is known to lose smoothness on circles about
    // `kink_center` (integration splits ray panels there) without being
    // radially symmetric.
    static ScalarField pointwise_with_kinks(PointFn f, PlanePoint kink_center,
                                            std::vector<double> kink_radii) {
        ScalarField s;
        s.eval_ = std::move(f);
        s.kink_center_ = kink_center;
        std::sort(kink_radii.begin(), kink_radii.end());
        s.breakpoints_ = std::move(kink_radii);
        return s;
    }

    static ScalarField radial(PlanePoint center, RadialFn g,
                              std::vector<double> breakpoints = {}) {
        ScalarField s;
        s.radial_center_ = center;
        s.kink_center_ = center;
        s.radial_ = std::move(g);
        std::sort(breakpoints.begin(), breakpoints.end());
        s.breakpoints_ = std::move(breakpoints);
        const RadialFn& gr = s.radial_;
        s.eval_ = [center, gr](const PlanePoint& p) { return gr(distance(p, center)); };
        return s;
    }

    static ScalarField constant(double c) {
        return radial({0.0, 0.0}, [c](double) { return c; });
    }

    double operator()(const PlanePoint& p) const { return eval_(p); }

    bool is_radial() const { return radial_center_.has_value(); }
    bool is_radial_about(const PlanePoint& c, double tol = 1e-12) const {
        return radial_center_ && same_point(*radial_center_, c, tol);
    }
    const std::optional<PlanePoint>& radial_center() const { return radial_center_; }
    double at_radius(double r) const { return radial_(r); }

    // kink circles: radii about kink_center() where smoothness may fail
    const std::optional<PlanePoint>& kink_center() const { return kink_center_; }
    const std::vector<double>& radial_breakpoints() const { return breakpoints_; }

    bool integrable_on_unit_scale() const { return integrable_on_unit_scale_; }
    ScalarField& declare_integrable_on_unit_scale(bool v) {
        integrable_on_unit_scale_ = v;
        return *this;
    }

private:
    PointFn eval_;
    RadialFn radial_;
    std::optional<PlanePoint> radial_center_;
    std::optional<PlanePoint> kink_center_;
    std::vector<double> breakpoints_;
    bool integrable_on_unit_scale_ = true;
};

// max(0, log|z - center|); kink circle at radius 1
inline ScalarField log_plus_field(PlanePoint center = {0.0, 0.0}) {
    return ScalarField::radial(
        center, [](double r) { return r > 1.0 ? std::log(r) : 0.0; }, {1.0});
}

// |z - center|
inline ScalarField abs_field(PlanePoint center = {0.0, 0.0}) {
    return ScalarField::radial(center, [](double r) { return r; });
}

}  // namespace qclab
