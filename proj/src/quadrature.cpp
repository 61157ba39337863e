#include "qclab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qclab/errors.hpp"

namespace qclab {

void QuadratureSpec::validate() const {
    if (radial_panels < 1 || nodes_per_panel < 1 || angular_nodes < 1)
        throw ValidationError("QuadratureSpec: all counts must be >= 1");
    if (nodes_per_panel > 16)
        throw ValidationError("QuadratureSpec: nodes_per_panel must be <= 16");
}

namespace {

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule of order n, Newton iteration on the Legendre recurrence.
GaussRule make_gauss_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            const double pm = (n == 1) ? 1.0 : p0;
            dp = n * (x * pn - pm) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

const GaussRule& gauss_rule(int n) {
    // all supported orders built once up front; safe for concurrent callers
    static const std::vector<GaussRule> cache = [] {
        std::vector<GaussRule> rules(17);
        for (int k = 1; k <= 16; ++k) rules[k] = make_gauss_rule(k);
        return rules;
    }();
    return cache.at(n);
}

[[noreturn]] void fail_nonfinite(double value, double where, const char* what) {
    std::ostringstream os;
    os << what << " evaluated to non-finite value " << value << " at node " << where;
    throw EvaluationError(os.str(), where);
}

// Sorted interior splits of (a, b), deduplicated. Tolerances scale with the
// split's own magnitude: a kink at r = 1 must survive even in an interval
// reaching out to e^30.
std::vector<double> clip_splits(std::vector<double> splits, double a, double b) {
    std::vector<double> out;
    std::sort(splits.begin(), splits.end());
    auto near = [](double x, double y) { return std::abs(x - y) <= 1e-13 * std::abs(y) + 1e-300; };
    for (double s : splits) {
        if (s <= a || s >= b || near(s, a) || near(s, b)) continue;
        if (!out.empty() && near(out.back(), s)) continue;
        out.push_back(s);
    }
    return out;
}

struct Piece {
    double lo, hi;
    int panels;
    bool log_spaced;
};

std::vector<Piece> build_pieces(double a, double b, const QuadratureSpec& q,
                                const std::vector<double>& splits) {
    std::vector<double> edges;
    edges.push_back(a);
    for (double s : splits) edges.push_back(s);
    edges.push_back(b);

    const int npieces = static_cast<int>(edges.size()) - 1;
    const int base = std::max(1, q.radial_panels / npieces);
    int remainder = std::max(0, q.radial_panels - base * npieces);

    std::vector<Piece> pieces;
    pieces.reserve(npieces);
    for (int i = 0; i < npieces; ++i) {
        Piece p;
        p.lo = edges[i];
        p.hi = edges[i + 1];
        p.panels = base + (remainder > 0 ? 1 : 0);
        if (remainder > 0) --remainder;
        p.log_spaced = (q.spacing == QuadratureSpec::Spacing::log_uniform) && p.lo > 0.0;
        pieces.push_back(p);
    }
    return pieces;
}

double integrate_piece(const Fn1D& f, const Piece& piece, const GaussRule& rule) {
    double sum = 0.0;
    if (piece.log_spaced) {
        const double s0 = std::log(piece.lo);
        const double ds = (std::log(piece.hi) - s0) / piece.panels;
        for (int p = 0; p < piece.panels; ++p) {
            const double sa = s0 + p * ds;
            double panel = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                const double s = sa + 0.5 * ds * (rule.nodes[k] + 1.0);
                const double t = std::exp(s);
                const double v = f(t);
                if (!std::isfinite(v)) fail_nonfinite(v, t, "integrand");
                panel += rule.weights[k] * v * t;  // dt = t ds
            }
            sum += panel * 0.5 * ds;
        }
    } else {
        const double dt = (piece.hi - piece.lo) / piece.panels;
        for (int p = 0; p < piece.panels; ++p) {
            const double ta = piece.lo + p * dt;
            double panel = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                const double t = ta + 0.5 * dt * (rule.nodes[k] + 1.0);
                const double v = f(t);
                if (!std::isfinite(v)) fail_nonfinite(v, t, "integrand");
                panel += rule.weights[k] * v;
            }
            sum += panel * 0.5 * dt;
        }
    }
    return sum;
}

double integrate_pieces(const Fn1D& f, double a, double b, const QuadratureSpec& q,
                        const std::vector<double>& splits) {
    const GaussRule& rule = gauss_rule(q.nodes_per_panel);
    double total = 0.0;
    for (const Piece& piece : build_pieces(a, b, q, splits)) {
        total += integrate_piece(f, piece, rule);
    }
    return total;
}

// Radii where the field's breakpoint circles (centered at `field_center`)
// intersect the ray origin + r*(cos t, sin t), restricted to (lo, hi).
std::vector<double> ray_breakpoints(const ScalarField& f, const PlanePoint& origin,
                                    double theta, double lo, double hi) {
    std::vector<double> out;
    if (!f.kink_center() || f.radial_breakpoints().empty()) return out;
    const PlanePoint c = *f.kink_center();
    const double dx = c.x - origin.x, dy = c.y - origin.y;
    const double d2 = dx * dx + dy * dy;
    const double proj = dx * std::cos(theta) + dy * std::sin(theta);
    for (double b : f.radial_breakpoints()) {
        const double disc = proj * proj - d2 + b * b;
        if (disc < 0.0) continue;
        const double root = std::sqrt(disc);
        for (double r : {proj - root, proj + root}) {
            if (r > lo && r < hi) out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double integrate_field_polar(const ScalarField& f, const PlanePoint& center, double lo,
                             double hi, const QuadratureSpec& q,
                             const Fn1D* radial_weight) {
    q.validate();
    // radial fast path
    if (f.is_radial_about(center)) {
        auto g = [&](double r) {
            const double w = radial_weight ? (*radial_weight)(r) : 1.0;
            return f.at_radius(r) * w * r;
        };
        return 2.0 * M_PI *
               integrate_pieces(g, lo, hi, q, clip_splits(f.radial_breakpoints(), lo, hi));
    }
    const int n = q.angular_nodes;
    const double dtheta = 2.0 * M_PI / n;
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        const double theta = dtheta * j;
        const double ct = std::cos(theta), st = std::sin(theta);
        auto g = [&](double r) {
            const PlanePoint p{center.x + r * ct, center.y + r * st};
            const double v = f(p);
            if (!std::isfinite(v)) fail_nonfinite(v, r, "field sample");
            const double w = radial_weight ? (*radial_weight)(r) : 1.0;
            return v * w * r;
        };
        total += integrate_pieces(g, lo, hi, q, ray_breakpoints(f, center, theta, lo, hi));
    }
    return total * dtheta;
}

}  // namespace

double integrate_1d(const Fn1D& f, double a, double b, const QuadratureSpec& q,
                    std::vector<double> splits) {
    q.validate();
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
        throw ValidationError("integrate_1d: requires finite a < b");
    return integrate_pieces(f, a, b, q, clip_splits(std::move(splits), a, b));
}

double integrate_radial(const Fn1D& g, const Annulus& a, const QuadratureSpec& q,
                        std::vector<double> splits) {
    q.validate();
    auto f = [&g](double r) { return g(r) * r; };
    return 2.0 * M_PI *
           integrate_pieces(f, a.r_inner, a.r_outer, q,
                            clip_splits(std::move(splits), a.r_inner, a.r_outer));
}

double integrate_field(const ScalarField& f, const Disk& region, const QuadratureSpec& q) {
    return integrate_field_polar(f, region.center, 0.0, region.radius, q, nullptr);
}

double integrate_field(const ScalarField& f, const Annulus& region, const QuadratureSpec& q) {
    return integrate_field_polar(f, region.center, region.r_inner, region.r_outer, q,
                                 nullptr);
}

double integrate_field_weighted(const ScalarField& f, const Annulus& region,
                                const Fn1D& radial_weight, const QuadratureSpec& q) {
    return integrate_field_polar(f, region.center, region.r_inner, region.r_outer, q,
                                 &radial_weight);
}

double extremum_on_circle(const ScalarField& h, const Circle& c, int angular_nodes,
                          ExtremumKind kind) {
    if (angular_nodes < 1)
        throw ValidationError("extremum_on_circle: angular_nodes must be >= 1");
    if (h.is_radial_about(c.center)) {
        const double v = h.at_radius(c.radius);
        if (!std::isfinite(v)) fail_nonfinite(v, c.radius, "circle sample");
        return v;
    }
    double best = 0.0;
    for (int j = 0; j < angular_nodes; ++j) {
        const double theta = 2.0 * M_PI * j / angular_nodes;
        const double v = h(c.at_angle(theta));
        if (!std::isfinite(v)) fail_nonfinite(v, theta, "circle sample");
        if (j == 0) {
            best = v;
        } else {
            best = (kind == ExtremumKind::max) ? std::max(best, v) : std::min(best, v);
        }
    }
    return best;
}

std::vector<double> find_level_crossings(const Fn1D& g, double a, double b, double level,
                                         const std::vector<double>& splits,
                                         QuadratureSpec::Spacing spacing) {
    const int scan = 512;
    std::vector<double> edges;
    edges.push_back(a);
    for (double s : clip_splits(splits, a, b)) edges.push_back(s);
    edges.push_back(b);

    std::vector<double> crossings;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        const double lo = edges[e], hi = edges[e + 1];
        const bool log_scan =
            spacing == QuadratureSpec::Spacing::log_uniform && lo > 0.0;
        auto at = [&](int i) {
            const double t = static_cast<double>(i) / scan;
            return log_scan ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
        };
        double prev_r = at(0);
        double prev_d = g(prev_r) - level;
        for (int i = 1; i <= scan; ++i) {
            const double r = at(i);
            const double d = g(r) - level;
            if ((prev_d < 0.0 && d > 0.0) || (prev_d > 0.0 && d < 0.0)) {
                double x0 = prev_r, x1 = r, d0 = prev_d;
                for (int it = 0; it < 90; ++it) {
                    const double mid = 0.5 * (x0 + x1);
                    const double dm = g(mid) - level;
                    if ((dm < 0.0) == (d0 < 0.0)) {
                        x0 = mid;
                        d0 = dm;
                    } else {
                        x1 = mid;
                    }
                }
                crossings.push_back(0.5 * (x0 + x1));
            } else if (d == 0.0 && prev_d != 0.0) {
                crossings.push_back(r);
            }
            prev_r = r;
            prev_d = d;
        }
    }
    std::sort(crossings.begin(), crossings.end());
    return crossings;
}

}  // namespace qclab
