#include "qclab/beltrami.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "qclab/errors.hpp"

namespace qclab {

namespace {

std::complex<double> unit_direction(std::complex<double> w) {
    const double r = std::abs(w);
    return r > 0.0 ? w / r : std::complex<double>(1.0, 0.0);
}

// r rho'(r) and rho(r) with the shared degeneracy check.
std::pair<double, double> stretch_terms(const RadialProfile& p, double r) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw ValidationError("radial map: evaluation radius must be positive and finite");
    const double rho = p.rho(r);
    const double rr = r * p.rho_prime(r);
    if (!(rr + rho > 0.0))
        throw DegeneratePointError("radial map: r*rho'(r) + rho(r) vanishes at r=" +
                                       std::to_string(r),
                                   r, 0.0);
    return {rr, rho};
}

}  // namespace

std::complex<double> RadialMap::displacement(const PlanePoint& z) const {
    const std::complex<double> w = to_complex(z) - to_complex(center);
    const double r = std::abs(w);
    if (r == 0.0) return {0.0, 0.0};
    return profile.rho(r) * unit_direction(w);
}

PlanePoint RadialMap::apply(const PlanePoint& z) const {
    return to_point(to_complex(center) + displacement(z));
}

bool RadialMap::near_breakpoint(double r, double margin) const {
    if (r <= margin) return true;  // the center itself is a kink of the stretching
    for (double b : profile.breakpoints) {
        if (std::abs(r - b) <= margin) return true;
    }
    return false;
}

double dilatation_from_mu(const BeltramiCoefficient& mu, const PlanePoint& z) {
    const double a = std::abs(mu(z));
    if (!(a < 1.0))
        throw DegeneratePointError("dilatation: |mu| >= 1 at z=(" + std::to_string(z.x) +
                                       "," + std::to_string(z.y) + ")",
                                   z.x, z.y);
    return (1.0 + a) / (1.0 - a);
}

BeltramiCoefficient mu_from_radial_map(const RadialMap& m) {
    const RadialProfile profile = m.profile;
    const PlanePoint center = m.center;
    auto eval = [profile, center](const PlanePoint& z) {
        const std::complex<double> w = to_complex(z) - to_complex(center);
        const double r = std::abs(w);
        auto [rr, rho] = stretch_terms(profile, r);
        const std::complex<double> dir = unit_direction(w);
        return dir * dir * ((rr - rho) / (rr + rho));
    };
    return BeltramiCoefficient(eval, std::nullopt);
}

double dilatation_from_radial_map(const RadialMap& m, double r) {
    auto [rr, rho] = stretch_terms(m.profile, r);
    if (!(rr > 0.0) || !(rho > 0.0))
        throw DegeneratePointError("dilatation: profile not increasing at r=" +
                                       std::to_string(r),
                                   r, 0.0);
    return std::max(rr / rho, rho / rr);
}

ScalarField dilatation_field(const RadialMap& m) {
    const RadialMap map = m;
    // the exact center is measure-zero for every integral taken here; sample
    // it as the limit from tiny positive radii
    return ScalarField::radial(
        m.center,
        [map](double r) { return dilatation_from_radial_map(map, std::max(r, 1e-300)); },
        m.profile.breakpoints);
}

std::pair<std::complex<double>, std::complex<double>> wirtinger_fd(const RadialMap& m,
                                                                   const PlanePoint& z,
                                                                   double h) {
    if (!(h > 0.0)) throw ValidationError("wirtinger_fd: step must be positive");
    const double r = distance(z, m.center);
    if (m.near_breakpoint(r, 2.0 * h)) {
        std::ostringstream os;
        os << "wirtinger_fd: stencil at r=" << r << " straddles a profile breakpoint "
           << "(need distance > " << 2.0 * h << ")";
        throw ValidationError(os.str());
    }
    auto at = [&](double dx, double dy) {
        return to_complex(m.apply({z.x + dx, z.y + dy}));
    };
    const std::complex<double> fx = (at(h, 0.0) - at(-h, 0.0)) / (2.0 * h);
    const std::complex<double> fy = (at(0.0, h) - at(0.0, -h)) / (2.0 * h);
    const std::complex<double> i(0.0, 1.0);
    return {0.5 * (fx - i * fy), 0.5 * (fx + i * fy)};
}

double beltrami_residual(const RadialMap& m, const BeltramiCoefficient& mu,
                         const std::vector<PlanePoint>& samples, double h) {
    double worst = 0.0;
    for (const PlanePoint& z : samples) {
        auto [fz, fzbar] = wirtinger_fd(m, z, h);
        worst = std::max(worst, std::abs(fzbar - mu(z) * fz));
    }
    return worst;
}

std::vector<PlanePoint> sample_annulus_points(const RadialMap& m, double r_lo, double r_hi,
                                              int count, unsigned long long seed,
                                              double margin) {
    if (!(0.0 < r_lo && r_lo < r_hi))
        throw ValidationError("sample_annulus_points: requires 0 < r_lo < r_hi");
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    };
    std::vector<PlanePoint> pts;
    pts.reserve(count);
    int guard = 0;
    while (static_cast<int>(pts.size()) < count) {
        if (++guard > 100 * count)
            throw ValidationError("sample_annulus_points: cannot avoid breakpoints");
        const double r = r_lo + (r_hi - r_lo) * uniform();
        const double theta = 2.0 * M_PI * uniform();
        if (m.near_breakpoint(r, margin)) continue;
        pts.push_back({m.center.x + r * std::cos(theta), m.center.y + r * std::sin(theta)});
    }
    return pts;
}

RadialMap identity_map(PlanePoint center) {
    RadialProfile p;
    p.rho = [](double r) { return r; };
    p.rho_prime = [](double) { return 1.0; };
    p.name = "identity";
    return {p, center};
}

RadialMap power_map(double K, PlanePoint center) {
    if (!(K >= 1.0) || !std::isfinite(K))
        throw ValidationError("power_map: requires finite K >= 1");
    if (K == 1.0) return identity_map(center);
    RadialProfile p;
    p.rho = [K](double r) { return std::pow(r, 1.0 / K); };
    p.rho_prime = [K](double r) { return std::pow(r, 1.0 / K - 1.0) / K; };
    p.name = "power:" + std::to_string(K);
    return {p, center};
}

RadialMap log_map(PlanePoint center) {
    RadialProfile p;
    p.rho = [](double r) { return r <= 1.0 ? r : 1.0 + std::log(r); };
    p.rho_prime = [](double r) { return r <= 1.0 ? 1.0 : 1.0 / r; };
    p.breakpoints = {1.0};  // C0 but not C1 at r = 1
    p.name = "log";
    return {p, center};
}

RadialMap fixture_by_name(const std::string& name, PlanePoint center) {
    if (name == "identity") return identity_map(center);
    if (name == "log") return log_map(center);
    if (name.rfind("power:", 0) == 0) {
        const std::string arg = name.substr(6);
        try {
            std::size_t used = 0;
            const double K = std::stod(arg, &used);
            if (used == arg.size()) return power_map(K, center);
        } catch (const std::exception&) {
        }
        throw ValidationError("fixture_by_name: bad exponent in '" + name + "'");
    }
    throw ValidationError("fixture_by_name: unknown fixture '" + name +
                          "' (expected identity, power:K, or log)");
}

RadialProfile load_profile_table(std::istream& in, const std::string& origin) {
    std::vector<double> r, rho, drho;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double a, b, c;
        if (!(row >> a)) continue;  // blank line
        if (!(row >> b >> c))
            throw ValidationError(origin + ":" + std::to_string(lineno) +
                                  ": expected three columns r rho rho_prime");
        if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c)))
            throw ValidationError(origin + ":" + std::to_string(lineno) +
                                  ": non-finite table entry");
        if (!r.empty() && !(a > r.back() && b > rho.back()))
            throw ValidationError(origin + ":" + std::to_string(lineno) +
                                  ": r and rho must be strictly increasing");
        if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
            throw ValidationError(origin + ":" + std::to_string(lineno) +
                                  ": r, rho, rho_prime must be positive");
        r.push_back(a);
        rho.push_back(b);
        drho.push_back(c);
    }
    if (r.size() < 2)
        throw ValidationError(origin + ": profile table needs at least two rows");

    auto locate = [r, origin](double x) -> std::size_t {
        if (x < r.front() || x > r.back())
            throw ValidationError(origin + ": radius " + std::to_string(x) +
                                  " outside tabulated range [" + std::to_string(r.front()) +
                                  ", " + std::to_string(r.back()) + "]");
        const auto it = std::upper_bound(r.begin(), r.end(), x);
        const std::size_t i = std::min(r.size() - 2,
                                       static_cast<std::size_t>(it - r.begin()) -
                                           (it == r.begin() ? 0 : 1));
        return i;
    };

    RadialProfile p;
    p.rho = [r, rho, locate](double x) {
        const std::size_t i = locate(x);
        const double t = (x - r[i]) / (r[i + 1] - r[i]);
        return rho[i] + t * (rho[i + 1] - rho[i]);
    };
    p.rho_prime = [r, drho, locate](double x) {
        const std::size_t i = locate(x);
        const double t = (x - r[i]) / (r[i + 1] - r[i]);
        return drho[i] + t * (drho[i + 1] - drho[i]);
    };
    p.breakpoints = r;
    p.name = "table:" + origin;
    return p;
}

RadialMap map_from_table_file(const std::string& path, PlanePoint center) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open profile table '" + path + "'");
    return {load_profile_table(in, path), center};
}

}  // namespace qclab
