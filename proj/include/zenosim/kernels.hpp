#pragma once

#include <cstddef>
#include <string>

namespace zenosim::kernels {

// Hot loops of the hierarchy integrator, operating on split-plane complex
// storage: a state is two double arrays (re, im) of n_blocks * block_dim
// entries, one block per auxiliary density operator.
//
// Scalar implementations are the reference; an AVX2 variant is selected at
// runtime when the CPU supports it. Both produce results equal to within
// floating-point reassociation (equivalence-tested in tests/test_kernels).

// y += a * x over n doubles (same real coefficient for both planes).
using AxpyRealFn = void (*)(double* y, double a, const double* x, std::size_t n);

// Per-block complex scale-accumulate:
//   dst_k += c_k * src_k  for block k, c_k a complex scalar per block.
using DiagScaleAccumFn = void (*)(double* dst_re, double* dst_im,
                                  const double* c_re, const double* c_im,
                                  const double* src_re, const double* src_im,
                                  std::size_t n_blocks, std::size_t block_dim);

// Per-block dense complex matvec-accumulate with one shared matrix:
//   dst_k += M * src_k  for every block k.
// M is block_dim x block_dim, column-major, split planes.
using BlockMatvecAccumFn = void (*)(double* dst_re, double* dst_im,
                                    const double* m_re, const double* m_im,
                                    const double* src_re, const double* src_im,
                                    std::size_t n_blocks, std::size_t block_dim);

struct KernelTable {
    const char* name;
    AxpyRealFn axpy_real;
    DiagScaleAccumFn diag_scale_accum;
    BlockMatvecAccumFn block_matvec_accum;
};

const KernelTable& scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_kernels();
#endif

// Best table for this CPU (AVX2 when available, scalar otherwise).
// Selected once; stable for the lifetime of the process.
const KernelTable& active_kernels();

} // namespace zenosim::kernels
