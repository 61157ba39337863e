#pragma once

#include <cmath>
#include <complex>

#include "qclab/errors.hpp"

namespace qclab {

struct PlanePoint {
    double x = 0.0;
    double y = 0.0;
};

inline std::complex<double> to_complex(const PlanePoint& p) { return {p.x, p.y}; }
inline PlanePoint to_point(std::complex<double> z) { return {z.real(), z.imag()}; }

inline double distance(const PlanePoint& a, const PlanePoint& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline bool same_point(const PlanePoint& a, const PlanePoint& b, double tol = 1e-12) {
    return distance(a, b) <= tol;
}

inline void require_finite_point(const PlanePoint& p, const char* what) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw ValidationError(std::string(what) + ": coordinates must be finite");
}

struct Disk {
    PlanePoint center;
    double radius;

    Disk(PlanePoint c, double r) : center(c), radius(r) {
        require_finite_point(c, "Disk");
        if (!(std::isfinite(r) && r > 0.0))
            throw ValidationError("Disk: radius must be finite and positive");
    }
    double area() const { return M_PI * radius * radius; }
};

struct Circle {
    PlanePoint center;
    double radius;

    Circle(PlanePoint c, double r) : center(c), radius(r) {
        require_finite_point(c, "Circle");
        if (!(std::isfinite(r) && r > 0.0))
            throw ValidationError("Circle: radius must be finite and positive");
    }
    PlanePoint at_angle(double theta) const {
        return {center.x + radius * std::cos(theta), center.y + radius * std::sin(theta)};
    }
};

struct Annulus {
    PlanePoint center;
    double r_inner;
    double r_outer;

    Annulus(PlanePoint c, double ri, double ro) : center(c), r_inner(ri), r_outer(ro) {
        require_finite_point(c, "Annulus");
        if (!(std::isfinite(ri) && std::isfinite(ro) && 0.0 < ri && ri < ro))
            throw ValidationError("Annulus: requires 0 < r_inner < r_outer < inf");
    }
};

inline double area_disk(const Disk& d) { return d.area(); }

}  // namespace qclab
