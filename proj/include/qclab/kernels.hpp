#pragma once

#include <cstddef>
#include <string>

namespace qclab::kernels {

// Dense double-precision kernels behind the grid solver and the quadrature
// reductions. A scalar reference implementation of every kernel always
// exists; on x86-64 an AVX2 variant is selected once at startup when the CPU
// supports it. QCLAB_SIMD=scalar|avx2 overrides the selection.
//
// Grid kernels use a zero-padded layout: an nx-by-ny interior stored inside
// an (nx+2)-by-(ny+2) array, row-major, halo entries kept at zero.

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);

// y[i] += alpha*x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);

// y[i] = x[i] + beta*y[i]
void xpay(const double* x, double beta, double* y, std::size_t n);

// out = mask .* (4u - uW - uE - uN - uS) on the interior; halo untouched.
void stencil5(const double* u, const double* mask, double* out,
              std::size_t nx, std::size_t ny);

// sum over horizontally and vertically adjacent cell pairs of (du)^2,
// including pairs that touch the zero halo.
double edge_energy(const double* u, std::size_t nx, std::size_t ny);

const std::string& active_backend();

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void xpay(const double* x, double beta, double* y, std::size_t n);
void stencil5(const double* u, const double* mask, double* out,
              std::size_t nx, std::size_t ny);
double edge_energy(const double* u, std::size_t nx, std::size_t ny);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define QCLAB_HAVE_AVX2_KERNELS 1
namespace avx2 {
bool cpu_supported();
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void xpay(const double* x, double beta, double* y, std::size_t n);
void stencil5(const double* u, const double* mask, double* out,
              std::size_t nx, std::size_t ny);
double edge_energy(const double* u, std::size_t nx, std::size_t ny);
}  // namespace avx2
#endif

}  // namespace qclab::kernels
