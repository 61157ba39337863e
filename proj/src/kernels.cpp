#include "qclab/kernels.hpp"

#include <cstdlib>

namespace qclab::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpay(const double* x, double beta, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void stencil5(const double* u, const double* mask, double* out,
              std::size_t nx, std::size_t ny) {
    const std::size_t w = nx + 2;
    for (std::size_t j = 1; j <= ny; ++j) {
        const double* row = u + j * w;
        const double* up = row - w;
        const double* dn = row + w;
        const double* m = mask + j * w;
        double* o = out + j * w;
        for (std::size_t i = 1; i <= nx; ++i) {
            o[i] = m[i] * (4.0 * row[i] - row[i - 1] - row[i + 1] - up[i] - dn[i]);
        }
    }
}

double edge_energy(const double* u, std::size_t nx, std::size_t ny) {
    const std::size_t w = nx + 2;
    const std::size_t h = ny + 2;
    double s = 0.0;
    for (std::size_t j = 0; j < h; ++j) {
        const double* row = u + j * w;
        for (std::size_t i = 0; i + 1 < w; ++i) {
            const double d = row[i + 1] - row[i];
            s += d * d;
        }
    }
    for (std::size_t j = 0; j + 1 < h; ++j) {
        const double* row = u + j * w;
        const double* dn = row + w;
        for (std::size_t i = 0; i < w; ++i) {
            const double d = dn[i] - row[i];
            s += d * d;
        }
    }
    return s;
}

}  // namespace scalar

namespace {

struct Backend {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*xpay)(const double*, double, double*, std::size_t);
    void (*stencil5)(const double*, const double*, double*, std::size_t, std::size_t);
    double (*edge_energy)(const double*, std::size_t, std::size_t);
    std::string name;
};

Backend select_backend() {
    const char* force = std::getenv("QCLAB_SIMD");
    const bool want_scalar = force && std::string(force) == "scalar";
#ifdef QCLAB_HAVE_AVX2_KERNELS
    const bool want_avx2 = !force || std::string(force) == "avx2";
    if (!want_scalar && want_avx2 && avx2::cpu_supported()) {
        return {avx2::dot, avx2::axpy, avx2::xpay, avx2::stencil5,
                avx2::edge_energy, "avx2"};
    }
#endif
    (void)want_scalar;
    return {scalar::dot, scalar::axpy, scalar::xpay, scalar::stencil5,
            scalar::edge_energy, "scalar"};
}

const Backend& backend() {
    static const Backend b = select_backend();
    return b;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    return backend().dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    backend().axpy(alpha, x, y, n);
}

void xpay(const double* x, double beta, double* y, std::size_t n) {
    backend().xpay(x, beta, y, n);
}

void stencil5(const double* u, const double* mask, double* out,
              std::size_t nx, std::size_t ny) {
    backend().stencil5(u, mask, out, nx, ny);
}

double edge_energy(const double* u, std::size_t nx, std::size_t ny) {
    return backend().edge_energy(u, nx, ny);
}

const std::string& active_backend() { return backend().name; }

}  // namespace qclab::kernels
