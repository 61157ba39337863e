#pragma once

// Shared helpers for the test suites: an adaptive Simpson oracle independent
// of the library's panel quadrature, a deterministic uniform generator, and
// tolerance helpers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace testsupport {

// Adaptive Simpson with interval bisection; independent oracle for 1-D
// integrals. `splits` may list known kinks; each smooth piece is integrated
// separately.
inline double simpson_recurse(const std::function<double(double)>& f, double a, double b,
                              double fa, double fm, double fb, double whole, double tol,
                              int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate_oracle(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, std::vector<double> splits = {}) {
    // removable endpoint artifacts like 0*log(0) evaluate as NaN; they carry
    // no measure, so sample them as zero
    auto safe = [&f](double t) {
        const double v = f(t);
        return std::isfinite(v) ? v : 0.0;
    };
    splits.push_back(a);
    splits.push_back(b);
    std::sort(splits.begin(), splits.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
        const double lo = splits[i], hi = splits[i + 1];
        if (!(hi > lo) || lo < a || hi > b) continue;
        const double mid = 0.5 * (lo + hi);
        const double flo = safe(lo), fmid = safe(mid), fhi = safe(hi);
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        // absolute targets finer than double precision on the piece's own
        // magnitude are unreachable; floor the budget accordingly
        const double budget = std::max(tol, 1e-14 * std::abs(whole));
        total += simpson_recurse(safe, lo, hi, flo, fmid, fhi, whole, budget, 40);
    }
    return total;
}

// Plane integral oracle for radial integrands: 2 pi * int g(r) r dr.
inline double radial_plane_oracle(const std::function<double(double)>& g, double r_lo,
                                  double r_hi, double tol = 1e-12,
                                  std::vector<double> splits = {}) {
    return 2.0 * M_PI *
           integrate_oracle([&g](double r) { return g(r) * r; }, r_lo, r_hi, tol,
                            std::move(splits));
}

class Uniform {
public:
    explicit Uniform(unsigned long long seed) : rng_(seed) {}
    double next() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double in(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::mt19937_64 rng_;
};

inline bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

inline bool close_abs(double a, double b, double abs_tol) {
    return std::abs(a - b) <= abs_tol;
}

}  // namespace testsupport
