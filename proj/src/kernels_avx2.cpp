// AVX2 variants of the dense kernels. This translation unit is the only one
// compiled with -mavx2; callers must check cpu_supported() before use.
// Multiplies and adds are kept separate (no FMA) so that element order and
// operations match the scalar reference except for dot-product reassociation.

#include "qclab/kernels.hpp"

#ifdef QCLAB_HAVE_AVX2_KERNELS

#include <immintrin.h>

namespace qclab::kernels::avx2 {

bool cpu_supported() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {
inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}
}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a + i);
        __m256d vb = _mm256_loadu_pd(b + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void xpay(const double* x, double beta, double* y, std::size_t n) {
    const __m256d vb = _mm256_set1_pd(beta);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vx, _mm256_mul_pd(vb, vy)));
    }
    for (; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void stencil5(const double* u, const double* mask, double* out,
              std::size_t nx, std::size_t ny) {
    const std::size_t w = nx + 2;
    const __m256d four = _mm256_set1_pd(4.0);
    for (std::size_t j = 1; j <= ny; ++j) {
        const double* row = u + j * w;
        const double* up = row - w;
        const double* dn = row + w;
        const double* m = mask + j * w;
        double* o = out + j * w;
        std::size_t i = 1;
        for (; i + 4 <= nx + 1; i += 4) {
            __m256d c = _mm256_loadu_pd(row + i);
            __m256d west = _mm256_loadu_pd(row + i - 1);
            __m256d east = _mm256_loadu_pd(row + i + 1);
            __m256d north = _mm256_loadu_pd(up + i);
            __m256d south = _mm256_loadu_pd(dn + i);
            __m256d v = _mm256_mul_pd(four, c);
            v = _mm256_sub_pd(v, west);
            v = _mm256_sub_pd(v, east);
            v = _mm256_sub_pd(v, north);
            v = _mm256_sub_pd(v, south);
            v = _mm256_mul_pd(v, _mm256_loadu_pd(m + i));
            _mm256_storeu_pd(o + i, v);
        }
        for (; i <= nx; ++i) {
            o[i] = m[i] * (4.0 * row[i] - row[i - 1] - row[i + 1] - up[i] - dn[i]);
        }
    }
}

double edge_energy(const double* u, std::size_t nx, std::size_t ny) {
    const std::size_t w = nx + 2;
    const std::size_t h = ny + 2;
    __m256d acc = _mm256_setzero_pd();
    double tail = 0.0;
    for (std::size_t j = 0; j < h; ++j) {
        const double* row = u + j * w;
        std::size_t i = 0;
        for (; i + 5 <= w; i += 4) {
            __m256d a = _mm256_loadu_pd(row + i);
            __m256d b = _mm256_loadu_pd(row + i + 1);
            __m256d d = _mm256_sub_pd(b, a);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
        }
        for (; i + 1 < w; ++i) {
            const double d = row[i + 1] - row[i];
            tail += d * d;
        }
    }
    for (std::size_t j = 0; j + 1 < h; ++j) {
        const double* row = u + j * w;
        const double* dn = row + w;
        std::size_t i = 0;
        for (; i + 4 <= w; i += 4) {
            __m256d a = _mm256_loadu_pd(row + i);
            __m256d b = _mm256_loadu_pd(dn + i);
            __m256d d = _mm256_sub_pd(b, a);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
        }
        for (; i < w; ++i) {
            const double d = dn[i] - row[i];
            tail += d * d;
        }
    }
    return hsum(acc) + tail;
}

}  // namespace qclab::kernels::avx2

#endif  // QCLAB_HAVE_AVX2_KERNELS
